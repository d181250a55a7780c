"""Exact Tate hypercohomology of finite groups and class-formation checking.

All computation is over Z with arbitrary-precision integers; there is no
floating point and no tolerance anywhere in the package.
"""

__version__ = "0.1.0"
