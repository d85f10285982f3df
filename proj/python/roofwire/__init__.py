from ._roofwire import *  # noqa: F401,F403
