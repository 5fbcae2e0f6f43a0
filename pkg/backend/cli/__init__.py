"""CLI - Command-line front end for solvers, sweeps and verification suites"""
