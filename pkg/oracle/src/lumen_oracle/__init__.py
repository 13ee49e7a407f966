"""Brute-force reference oracle and differential harness.

Everything here re-derives values from first principles with plain
schoolbook arithmetic and talks to the library under test only through
its command line and serialized files. No code is shared with it.
"""

__version__ = "0.1.0"
