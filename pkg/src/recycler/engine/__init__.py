"""
A library for the generic Randomness Recycler protocol: states, steps and the run loop.
"""
