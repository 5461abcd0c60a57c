"""
A CLI tool for sampling, verifying and benchmarking with `recycler`.
"""
