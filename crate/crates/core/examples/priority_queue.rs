//! The addressable max-priority queue used by the orderings and the
//! overlap partitioner.

use snnmap::partitioning::AddressablePriorityQueue;

fn main() {
    let mut q = AddressablePriorityQueue::new(5);
    q.set(3, 1.0);
    q.set(1, 2.5);
    q.add(3, 2.0);
    q.set(4, 3.0);
    q.remove(1);
    while let Some((id, p)) = q.pop() {
        println!("{id} {p}");
    }
}
