"""
A library for immutable simple graphs, edge subgraphs and the connectivity queries samplers need.
"""
