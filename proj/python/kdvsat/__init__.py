from ._kdvsat import *  # noqa: F401,F403
from ._kdvsat import __doc__  # noqa: F401
