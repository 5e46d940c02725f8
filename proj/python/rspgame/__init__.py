"""Two-provider ride-service pricing and routing equilibria."""

try:
    from rspgame._rspgame import *  # noqa: F401,F403  (installed package layout)
except ImportError:  # in-tree build: the module sits on PYTHONPATH directly
    from _rspgame import *  # noqa: F401,F403
