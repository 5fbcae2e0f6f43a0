"""Special Functions - Legendre functions of the second kind Q_ν(x), x > 1"""
