"""
A library of Randomness Recycler samplers for Gibbs-type models on graphs.
"""
