/// Indexed binary max-heap over ids `0..capacity`.
///
/// Equal priorities pop the lowest id first.
#[derive(Debug, Clone)]
pub struct AddressablePriorityQueue {
    heap: Vec<usize>,
    /// Heap slot of each id, `NONE` when absent.
    slot: Vec<usize>,
    priority: Vec<f64>,
}

const NONE: usize = usize::MAX;

impl AddressablePriorityQueue {
    pub fn new(capacity: usize) -> Self {
        Self {
            heap: Vec::new(),
            slot: vec![NONE; capacity],
            priority: vec![0.0; capacity],
        }
    }

    pub fn len(&self) -> usize {
        self.heap.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heap.is_empty()
    }

    pub fn contains(&self, id: usize) -> bool {
        self.slot[id] != NONE
    }

    pub fn priority(&self, id: usize) -> Option<f64> {
        self.contains(id).then(|| self.priority[id])
    }

    /// Inserts `id` or changes its priority.
    pub fn set(&mut self, id: usize, priority: f64) {
        self.priority[id] = priority;
        if self.slot[id] == NONE {
            self.slot[id] = self.heap.len();
            self.heap.push(id);
            self.sift_up(self.heap.len() - 1);
        } else {
            let i = self.slot[id];
            self.sift_up(i);
            self.sift_down(self.slot[id]);
        }
    }

    /// Adds `delta` to the priority of `id`, inserting it at `delta` if absent.
    pub fn add(&mut self, id: usize, delta: f64) {
        let p = self.priority(id).unwrap_or(0.0) + delta;
        self.set(id, p);
    }

    pub fn peek(&self) -> Option<(usize, f64)> {
        self.heap.first().map(|&id| (id, self.priority[id]))
    }

    pub fn pop(&mut self) -> Option<(usize, f64)> {
        let top = self.peek()?;
        self.remove(top.0);
        Some(top)
    }

    pub fn remove(&mut self, id: usize) -> Option<f64> {
        let i = self.slot[id];
        if i == NONE {
            return None;
        }
        let last = self.heap.len() - 1;
        self.swap(i, last);
        self.heap.pop();
        self.slot[id] = NONE;
        if i < self.heap.len() {
            let moved = self.heap[i];
            self.sift_up(i);
            self.sift_down(self.slot[moved]);
        }
        Some(self.priority[id])
    }

    pub fn clear(&mut self) {
        for &id in &self.heap {
            self.slot[id] = NONE;
        }
        self.heap.clear();
    }

    /// Ids currently queued, in heap order.
    pub fn ids(&self) -> &[usize] {
        &self.heap
    }

    fn above(&self, a: usize, b: usize) -> bool {
        let (ia, ib) = (self.heap[a], self.heap[b]);
        let (pa, pb) = (self.priority[ia], self.priority[ib]);
        pa > pb || (pa == pb && ia < ib)
    }

    fn swap(&mut self, a: usize, b: usize) {
        self.heap.swap(a, b);
        self.slot[self.heap[a]] = a;
        self.slot[self.heap[b]] = b;
    }

    fn sift_up(&mut self, mut i: usize) {
        while i > 0 {
            let parent = (i - 1) / 2;
            if !self.above(i, parent) {
                break;
            }
            self.swap(i, parent);
            i = parent;
        }
    }

    fn sift_down(&mut self, mut i: usize) {
        loop {
            let (l, r) = (2 * i + 1, 2 * i + 2);
            let mut best = i;
            if l < self.heap.len() && self.above(l, best) {
                best = l;
            }
            if r < self.heap.len() && self.above(r, best) {
                best = r;
            }
            if best == i {
                break;
            }
            self.swap(i, best);
            i = best;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pops_in_priority_then_id_order() {
        let mut q = AddressablePriorityQueue::new(6);
        q.set(4, 1.0);
        q.set(2, 3.0);
        q.set(5, 3.0);
        q.set(0, 0.5);
        q.add(0, 2.5);
        q.set(1, f64::INFINITY);
        let order: Vec<usize> = std::iter::from_fn(|| q.pop().map(|(id, _)| id)).collect();
        assert_eq!(order, vec![1, 0, 2, 5, 4]);
    }

    #[test]
    fn remove_and_decrease() {
        let mut q = AddressablePriorityQueue::new(5);
        for i in 0..5 {
            q.set(i, i as f64);
        }
        q.remove(4);
        q.set(3, -1.0);
        assert_eq!(q.pop(), Some((2, 2.0)));
        assert!(!q.contains(4));
        q.clear();
        assert!(q.is_empty());
        q.set(4, 1.0);
        assert_eq!(q.pop(), Some((4, 1.0)));
    }
}
