"""Random covering, colored dyadic trees and limsup-set experiments."""

try:
    from ._circov import *  # noqa: F401,F403
    from ._circov import __version__
except ImportError:  # development layout: extension built next to the sources
    from _circov import *  # noqa: F401,F403
    from _circov import __version__
