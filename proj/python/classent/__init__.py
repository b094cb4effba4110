from ._classent import *  # noqa: F401,F403
