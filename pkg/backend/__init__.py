"""Robin Exterior Toolkit - lowest Robin eigenvalue outside hyperbolic disks"""
