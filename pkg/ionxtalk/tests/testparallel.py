#!/usr/bin/env python
""" Test the parallel module"""
import unittest
import copy

from ionxtalk import parallel


try:
    from mpi4py import MPI
    distributed = MPI.COMM_WORLD.Get_size() > 1
except ImportError:
    print('Warning: without mpi4py module, only serial behavior is tested.')
    distributed = False


class TestParallel(unittest.TestCase):
    def setUp(self):
        self.num_MPI_workers = parallel.get_num_procs()


    def tearDown(self):
        # find_assignments reads the worker count from a module global, which
        # some tests overwrite.  Restore it for the tests that follow.
        parallel._num_MPI_workers = self.num_MPI_workers
        parallel.barrier()


    def test_find_assignments(self):
        """Tests that tasks are split into contiguous, balanced chunks

        The number of workers is mimicked by setting the module global.
        """
        pairs = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4), (1, 5)]
        copy_pairs = copy.deepcopy(pairs)
        parallel._num_MPI_workers = 5
        correct_assignments = [
            [(1, 2)], [(1, 3)], [(1, 4), (2, 3)], [(2, 4)], [(3, 4), (1, 5)]]
        self.assertEqual(
            parallel.find_assignments(pairs), correct_assignments)
        self.assertEqual(pairs, copy_pairs)

        restarts = [0, 1, 2, 3]
        parallel._num_MPI_workers = 2
        self.assertEqual(
            parallel.find_assignments(restarts), [[0, 1], [2, 3]])

        # Uneven weights
        tasks = ['1', '2', '4', '3', '6', '7', '5']
        task_weights = [1, 3, 2, 3, 3, 2, 1]
        parallel._num_MPI_workers = 5
        correct_assignments = [['1', '2'], ['4'], ['3'], ['6'], ['7', '5']]
        self.assertEqual(parallel.find_assignments(
            tasks, task_weights=task_weights), correct_assignments)

        # A heavy last task leaves the last worker idle
        tasks = ['a', 4, (2, 1), 4.3]
        task_weights = [.1, .1, .1, .7]
        parallel._num_MPI_workers = 3
        assignments = parallel.find_assignments(
            tasks, task_weights=task_weights)
        self.assertEqual(assignments, [['a', 4, (2, 1)], [4.3], []])
        self.assertTrue(parallel.check_for_empty_tasks(assignments))

        # Concatenated assignments preserve task order
        parallel._num_MPI_workers = 3
        tasks = list(range(11))
        self.assertEqual(
            [t for chunk in parallel.find_assignments(tasks) for t in chunk],
            tasks)


    def test_map_tasks(self):
        """Results come back in task order on every worker."""
        tasks = [(t1, t2) for t1 in range(1, 6) for t2 in range(t1 + 1, 6)]
        results = parallel.map_tasks(lambda pair: pair[0] * 10 + pair[1],
                                     tasks)
        self.assertEqual(results, [t1 * 10 + t2 for t1, t2 in tasks])
        self.assertEqual(parallel.map_tasks(lambda t: t, []), [])


    def test_call_from_rank_zero(self):
        """Call a function on rank zero only."""
        def add_and_scale(arg1, arg2, scale=1):
            return True, scale * (arg1 + arg2)
        outputs = parallel.call_from_rank_zero(
            add_and_scale, parallel.get_rank() + 1, 2, scale=3)
        if parallel.is_rank_zero():
            self.assertEqual(outputs, (True, 9))
        else:
            self.assertIsNone(outputs)


    @unittest.skipIf(distributed, 'Worker count is patched serially')
    def test_idle_worker_warning(self):
        parallel._num_MPI_workers = 2
        with self.assertLogs('ionxtalk', level='WARNING') as logs:
            results = parallel.map_tasks(lambda t: 2 * t, [5])
        self.assertEqual(results, [10])
        self.assertIn('idle', logs.output[0])


    def test_allgather(self):
        gathered = parallel.allgather(parallel.get_rank())
        self.assertEqual(gathered, list(range(parallel.get_num_procs())))


if __name__ == '__main__':
    unittest.main()
