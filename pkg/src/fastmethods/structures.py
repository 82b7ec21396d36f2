"""Ordering containers for the narrow band.

All containers store ``(cell, key)`` pairs where ``cell`` is a flat grid
index and ``key`` its tentative arrival time.
"""
from __future__ import annotations

import heapq
import math
from collections import deque


class EmptyQueueError(IndexError):
    """Raised when popping from an empty container."""


class BinaryHeap:
    """Array binary min-heap with a cell -> slot map for O(log n) decrease-key."""

    def __init__(self):
        self._keys = []
        self._cells = []
        self._slot = {}

    def __len__(self):
        return len(self._cells)

    def __contains__(self, cell):
        return cell in self._slot

    def push(self, cell, key):
        if cell in self._slot:
            raise ValueError(f"cell {cell} already in heap")
        self._keys.append(key)
        self._cells.append(cell)
        self._slot[cell] = len(self._cells) - 1
        self._sift_up(len(self._cells) - 1)

    def decrease(self, cell, new_key):
        try:
            pos = self._slot[cell]
        except KeyError:
            raise KeyError(f"cell {cell} not in heap") from None
        if new_key > self._keys[pos]:
            raise ValueError("decrease() cannot raise a key")
        self._keys[pos] = new_key
        self._sift_up(pos)

    def top(self):
        if not self._cells:
            raise EmptyQueueError("top of empty heap")
        return self._cells[0], self._keys[0]

    def pop(self):
        cells, keys, slot = self._cells, self._keys, self._slot
        if not cells:
            raise EmptyQueueError("pop from empty heap")
        cell, key = cells[0], keys[0]
        del slot[cell]
        last_cell = cells.pop()
        last_key = keys.pop()
        if cells:
            cells[0] = last_cell
            keys[0] = last_key
            slot[last_cell] = 0
            self._sift_down(0)
        return cell, key

    def _sift_up(self, pos):
        keys, cells, slot = self._keys, self._cells, self._slot
        key, cell = keys[pos], cells[pos]
        while pos > 0:
            parent = (pos - 1) >> 1
            pk = keys[parent]
            if key < pk:
                keys[pos] = pk
                pc = cells[parent]
                cells[pos] = pc
                slot[pc] = pos
                pos = parent
            else:
                break
        keys[pos] = key
        cells[pos] = cell
        slot[cell] = pos

    def _sift_down(self, pos):
        keys, cells, slot = self._keys, self._cells, self._slot
        n = len(keys)
        key, cell = keys[pos], cells[pos]
        while True:
            child = 2 * pos + 1
            if child >= n:
                break
            right = child + 1
            if right < n and keys[right] < keys[child]:
                child = right
            ck = keys[child]
            if ck < key:
                keys[pos] = ck
                cc = cells[child]
                cells[pos] = cc
                slot[cc] = pos
                pos = child
            else:
                break
        keys[pos] = key
        cells[pos] = cell
        slot[cell] = pos

    def check_invariants(self):
        """Full-scan heap-order and slot-map check (for tests)."""
        keys = self._keys
        for i in range(1, len(keys)):
            assert keys[(i - 1) >> 1] <= keys[i], f"heap order broken at slot {i}"
        assert len(self._slot) == len(self._cells)
        for cell, pos in self._slot.items():
            assert self._cells[pos] == cell, f"slot map broken for cell {cell}"


class _FibNode:
    __slots__ = ("cell", "key", "degree", "parent", "child", "left", "right", "marked")

    def __init__(self, cell, key):
        self.cell = cell
        self.key = key
        self.degree = 0
        self.parent = None
        self.child = None
        self.left = self
        self.right = self
        self.marked = False


class FibonacciHeap:
    """Fibonacci min-heap: O(1) push/decrease, O(log n) amortized pop.

    Root list and child lists are circular doubly linked lists; decrease
    uses cut + cascading cut, pop consolidates roots by degree.
    """

    def __init__(self):
        self._min = None
        self._n = 0
        self._nodes = {}

    def __len__(self):
        return self._n

    def __contains__(self, cell):
        return cell in self._nodes

    @staticmethod
    def _splice(a, b):
        # insert single node b to the right of a
        b.left = a
        b.right = a.right
        a.right.left = b
        a.right = b

    @staticmethod
    def _unlink(x):
        x.left.right = x.right
        x.right.left = x.left
        x.left = x.right = x

    def push(self, cell, key):
        if cell in self._nodes:
            raise ValueError(f"cell {cell} already in heap")
        node = _FibNode(cell, key)
        self._nodes[cell] = node
        if self._min is None:
            self._min = node
        else:
            self._splice(self._min, node)
            if key < self._min.key:
                self._min = node
        self._n += 1

    def top(self):
        if self._min is None:
            raise EmptyQueueError("top of empty heap")
        return self._min.cell, self._min.key

    def pop(self):
        z = self._min
        if z is None:
            raise EmptyQueueError("pop from empty heap")
        # move children to root list
        child = z.child
        if child is not None:
            kids = []
            x = child
            while True:
                kids.append(x)
                x = x.right
                if x is child:
                    break
            for x in kids:
                self._unlink(x)
                x.parent = None
                self._splice(z, x)
            z.child = None
        nxt = z.right
        self._unlink(z)
        del self._nodes[z.cell]
        self._n -= 1
        if nxt is z:
            self._min = None
        else:
            self._min = nxt
            self._consolidate()
        return z.cell, z.key

    def _consolidate(self):
        roots = []
        x = self._min
        while True:
            roots.append(x)
            x = x.right
            if x is self._min:
                break
        by_degree = {}
        for x in roots:
            d = x.degree
            while d in by_degree:
                y = by_degree.pop(d)
                if y.key < x.key:
                    x, y = y, x
                self._link(y, x)
                d = x.degree
            by_degree[d] = x
        best = None
        for x in by_degree.values():
            if best is None or x.key < best.key:
                best = x
        self._min = best

    def _link(self, y, x):
        # make root y a child of root x
        self._unlink(y)
        y.parent = x
        if x.child is None:
            x.child = y
        else:
            self._splice(x.child, y)
        x.degree += 1
        y.marked = False

    def decrease(self, cell, new_key):
        try:
            x = self._nodes[cell]
        except KeyError:
            raise KeyError(f"cell {cell} not in heap") from None
        if new_key > x.key:
            raise ValueError("decrease() cannot raise a key")
        x.key = new_key
        y = x.parent
        if y is not None and x.key < y.key:
            self._cut(x, y)
            self._cascading_cut(y)
        if x.key < self._min.key:
            self._min = x

    def _cut(self, x, y):
        if y.child is x:
            y.child = x.right if x.right is not x else None
        self._unlink(x)
        y.degree -= 1
        x.parent = None
        x.marked = False
        self._splice(self._min, x)

    def _cascading_cut(self, y):
        z = y.parent
        while z is not None:
            if not y.marked:
                y.marked = True
                return
            self._cut(y, z)
            y = z
            z = y.parent

    def check_invariants(self):
        """Heap order between every node and its children (for tests)."""
        count = 0
        stack = []
        if self._min is not None:
            x = self._min
            while True:
                assert x.parent is None
                assert self._min.key <= x.key
                stack.append(x)
                x = x.right
                if x is self._min:
                    break
        while stack:
            x = stack.pop()
            count += 1
            deg = 0
            c = x.child
            if c is not None:
                while True:
                    assert c.parent is x
                    assert x.key <= c.key, "heap order broken"
                    stack.append(c)
                    deg += 1
                    c = c.right
                    if c is x.child:
                        break
            assert deg == x.degree
        assert count == self._n == len(self._nodes)


class PriorityQueue:
    """Plain binary-heap priority queue; the same cell may appear many times.

    Stale duplicates are returned as-is; callers discard them.
    """

    def __init__(self):
        self._heap = []

    def __len__(self):
        return len(self._heap)

    def push(self, cell, key):
        heapq.heappush(self._heap, (key, cell))

    def top(self):
        if not self._heap:
            raise EmptyQueueError("top of empty queue")
        key, cell = self._heap[0]
        return cell, key

    def pop(self):
        if not self._heap:
            raise EmptyQueueError("pop from empty queue")
        key, cell = heapq.heappop(self._heap)
        return cell, key


class UntidyRangeError(ValueError):
    """A key does not fit in the circular range of an untidy queue."""


class UntidyQueue:
    """Circular array of FIFO buckets of fixed width ``t_range / k``.

    A key goes to absolute bucket ``floor(key / width)``; the slot is that
    number modulo ``k``.  Keys below the head bucket are placed in the head
    bucket.  Entries inside a bucket come out in insertion order, not key
    order.  ``decrease`` re-inserts the cell at the tail of its new bucket;
    the old entry is dropped lazily when it reaches the front.
    """

    def __init__(self, bucket_count: int = 1000, t_range: float = 2.0):
        if bucket_count < 1:
            raise ValueError("bucket_count must be >= 1")
        if not t_range > 0:
            raise ValueError("t_range must be positive")
        self.k = int(bucket_count)
        self.t_range = float(t_range)
        self.width = self.t_range / self.k
        self._buckets = [deque() for _ in range(self.k)]
        self._key = {}  # live cell -> current key
        self._stamp = {}  # live cell -> insertion stamp of its live entry
        self._head = None  # absolute index of the head bucket
        self._counter = 0

    def __len__(self):
        return len(self._key)

    def __contains__(self, cell):
        return cell in self._key

    def _bucket_of(self, key):
        b = math.floor(key / self.width)
        if self._head is None:
            self._head = b
        if b < self._head:
            b = self._head
        elif b - self._head >= self.k:
            raise UntidyRangeError(
                f"key {key!r} exceeds the untidy queue range "
                f"({self.k} buckets x {self.width!r} from {self._head * self.width!r})"
            )
        return b

    def _insert(self, cell, key):
        b = self._bucket_of(key)
        self._counter += 1
        self._buckets[b % self.k].append((cell, self._counter))
        self._key[cell] = key
        self._stamp[cell] = self._counter

    def push(self, cell, key):
        if cell in self._key:
            raise ValueError(f"cell {cell} already queued")
        self._insert(cell, key)

    def decrease(self, cell, new_key):
        if cell not in self._key:
            raise KeyError(f"cell {cell} not queued")
        if new_key > self._key[cell]:
            raise ValueError("decrease() cannot raise a key")
        self._insert(cell, new_key)

    def pop(self):
        if not self._key:
            raise EmptyQueueError("pop from empty untidy queue")
        buckets, k, stamp = self._buckets, self.k, self._stamp
        while True:
            bucket = buckets[self._head % k]
            while bucket:
                cell, s = bucket.popleft()
                if stamp.get(cell) == s:
                    del stamp[cell]
                    return cell, self._key.pop(cell)
            self._head += 1


def update_step(step: float, c1: int, c_total: int) -> float:
    """Retune the double-queue threshold step so that 65-75% of insertions hit the first queue."""
    low, high = 0.65, 0.75
    perc = 1.0
    if c1 > 0:
        perc = c1 / c_total
    if perc <= low:
        step = step * 1.5
    elif perc >= high:
        step = step / 2
    return step


class DoubleQueue:
    """Two FIFO queues split by a moving time threshold.

    Keys at or below ``th`` go to the first queue, others to the second.
    When the first queue runs dry, :meth:`swap_and_retune` updates the step,
    exchanges the queues by flipping an index, and raises the threshold.
    """

    def __init__(self, step: float):
        self.step = float(step)
        self.th = float(step)
        self._queues = (deque(), deque())
        self._first = 0
        self.c1 = 0
        self.c_total = 0

    @property
    def q1(self):
        return self._queues[self._first]

    @property
    def q2(self):
        return self._queues[1 - self._first]

    def __len__(self):
        return len(self._queues[0]) + len(self._queues[1])

    def push(self, cell, key):
        self.c_total += 1
        if key <= self.th:
            self.q1.append(cell)
            self.c1 += 1
        else:
            self.q2.append(cell)

    def pop_first(self):
        """Front of the first queue, or ``None`` when it is empty."""
        q = self.q1
        return q.popleft() if q else None

    def swap_and_retune(self):
        self.step = update_step(self.step, self.c1, self.c_total)
        self._first = 1 - self._first
        self.c1 = 0
        self.c_total = 0
        self.th += self.step
