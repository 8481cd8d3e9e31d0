# This file makes the examples directory a python package.
