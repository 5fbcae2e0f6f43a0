"""Verifier - Numerical checks of the exterior Robin inequalities with pass/fail reports"""
