"""Geometry - Hyperbolic disks, Steiner parallel sets and comparison radii"""
