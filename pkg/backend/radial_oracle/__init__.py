"""Radial Oracle - P1 finite elements for weighted 1D Rayleigh quotients on [0, T]"""
