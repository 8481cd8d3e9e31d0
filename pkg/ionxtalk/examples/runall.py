#!/usr/bin/env python
import runpy

from ionxtalk import parallel


# The oracle check integrates serially
for i in range(1, 6):
    if parallel.is_distributed() and i == 4:
        continue
    runpy.run_path('tutorial_ex%d.py' % i, run_name='__main__')
    parallel.barrier()
