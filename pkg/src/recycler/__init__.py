"""
A core library providing Randomness Recycler perfect samplers and an exact enumeration oracle.
"""
