"""
Providing the acceptance rule for heat-bath and general proposals.

For a proposal that adds site v, the step is accepted with probability rho / M, where
rho is the ratio of the new conditional law to (proposal probability x old conditional
law) and M its maximum over configurations of the active set. Any proposal law works
as long as it gives positive probability to every color the target allows.
"""

from recycler.exc import InvariantViolation, SamplerStateError

_RELATIVE_SLACK = 1e-12


def heat_bath_acceptance(rho_value: float, m_value: float) -> float:
    """
    Acceptance probability rho / M.

    Factors common to rho and M (normalizers of the old and new conditional laws) may be
    dropped by the caller.

    Args:
        rho_value (float): The ratio for the proposed transition (value > 0).
        m_value (float): Its maximum over active-set configurations.

    Returns:
        float: A probability in (0, 1].
    """

    if rho_value <= 0 or m_value <= 0:
        raise SamplerStateError(
            f"Proposal has zero probability (rho '{rho_value}', M '{m_value}')."
        )

    if rho_value > m_value * (1 + _RELATIVE_SLACK):
        raise InvariantViolation(f"rho '{rho_value}' exceeds its maximum '{m_value}'.")

    return min(rho_value / m_value, 1.0)
