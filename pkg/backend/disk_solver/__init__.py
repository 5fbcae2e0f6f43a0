"""Disk Solver - Closed-form lowest Robin spectral point outside a geodesic disk"""
