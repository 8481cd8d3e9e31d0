""" Modules to load when using "from ionxtalk.tests import " """
# Modules available from the top-level namespace.
from .alltests import *
