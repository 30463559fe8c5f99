"""Incomplete exponential sums toolkit: Kloosterman/Birch complete-sum
tables, prefix maxima, lower-bound estimators and equidistribution
experiments over prime fields."""

try:
    from ._expsum import *  # noqa: F401,F403  (installed layout)
    from ._expsum import __version__  # noqa: F401
except ImportError:  # build-tree layout: module next to the package on sys.path
    from _expsum import *  # noqa: F401,F403
    from _expsum import __version__  # noqa: F401
