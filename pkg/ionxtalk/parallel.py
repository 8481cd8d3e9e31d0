"""Optional MPI distribution of independent tasks

Everything here works without mpi4py; in that case there is a single worker
and all calls reduce to their serial meaning.
"""
import numpy as np


try:
    from mpi4py import MPI
    _MPI_avail = True
except ImportError:
    _MPI_avail = False

if _MPI_avail:
    comm = MPI.COMM_WORLD
    # To adjust number of procs, use submission script/mpiexec
    _num_MPI_workers = comm.Get_size()
    _rank = comm.Get_rank()
    _is_distributed = _num_MPI_workers > 1
else:
    _num_MPI_workers = 1
    _rank = 0
    _is_distributed = False
    comm = None


def get_rank():
    """Returns rank of this processor/MPI worker."""
    return _rank


def get_num_procs():
    """Returns number of processors/MPI workers."""
    return _num_MPI_workers


def is_distributed():
    """Returns True if there is more than one processor/MPI worker and mpi4py
    was imported properly."""
    return _is_distributed


def is_rank_zero():
    """Returns True if rank is zero, False if not."""
    return _rank == 0


def barrier():
    """Wrapper for Barrier(); forces all processors/MPI workers to
    synchronize."""
    if _is_distributed:
        comm.Barrier()


def call_from_rank_zero(func, *args, **kwargs):
    """Calls function from rank zero processor/MPI worker, does not call
    ``barrier()``.

    Usage::

      parallel.call_from_rank_zero(save_csv, 'map.csv', columns, rows)

    """
    if is_rank_zero():
        out = func(*args, **kwargs)
    else:
        out = None
    return out


def allgather(vals):
    """Gathers one object from every processor/MPI worker onto all of them.

    Returns:
        ``outputs``: List indexed by rank.
    """
    if _is_distributed:
        return comm.allgather(vals)
    return [vals]


def find_assignments(tasks, task_weights=None):
    """Evenly distributes tasks among all processors/MPI workers using task
    weights.

    Args:
        ``tasks``: List of tasks, e.g. ion pairs or restart indices.

    Kwargs:
        ``task_weights``: List of weights for each task.  These are used to
        equally distribute the workload among processors/MPI workers, in
        case some tasks are more expensive than others.

    Returns:
        ``task_assignments``: 2D list of tasks, with indices corresponding
        to [rank][task_index].  Each processor/MPI worker is responsible
        for ``task_assignments[rank]``.  Tasks stay in their original order,
        so concatenating the assignments gives back ``tasks``.
    """
    task_assignments = []

    if task_weights is None:
        task_weights = np.ones(len(tasks))
    else:
        task_weights = np.array(task_weights)

    first_unassigned_index = 0

    for worker_num in range(_num_MPI_workers):
        # amount of work to do, float (scaled by weights)
        work_remaining = sum(task_weights[first_unassigned_index:])

        num_remaining_workers = _num_MPI_workers - worker_num
        work_per_worker = (1. * work_remaining) / num_remaining_workers

        if task_weights[first_unassigned_index:].size != 0:
            # Index of tasks element which has sum(tasks[:ind])
            # closest to work_per_worker
            new_max_task_index = np.abs(np.cumsum(
                task_weights[first_unassigned_index:]) -
                work_per_worker).argmin() + first_unassigned_index
            task_assignments.append(
                tasks[first_unassigned_index:new_max_task_index + 1])
            first_unassigned_index = new_max_task_index + 1
        else:
            task_assignments.append([])

    return task_assignments


def check_for_empty_tasks(task_assignments):
    """Returns ``True`` if any processor/MPI worker has no tasks."""
    return any(len(assignment) == 0 for assignment in task_assignments)


def map_tasks(func, tasks, task_weights=None):
    """Evaluates ``func`` on every task, spreading tasks over MPI workers.

    Args:
        ``func``: Callable taking a single task.

        ``tasks``: List of tasks.

    Kwargs:
        ``task_weights``: See :py:func:`find_assignments`.

    Returns:
        ``results``: List of ``func(task)`` in the order of ``tasks``,
        available on every worker.

    ``func`` must be a pure function of its task, so that results do not
    depend on the number of workers.
    """
    tasks = list(tasks)
    task_assignments = find_assignments(tasks, task_weights=task_weights)
    if tasks and check_for_empty_tasks(task_assignments):
        from . import util
        util.print_msg(
            'Warning: %d tasks leave some of %d MPI workers idle'
            % (len(tasks), _num_MPI_workers), 'stderr')
    local_results = [func(task) for task in task_assignments[_rank]]
    gathered = allgather(local_results)
    return [result for worker_results in gathered for result in worker_results]
