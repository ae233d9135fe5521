use crate::stateset::StateSet;

/// A collection of sets that is exactly `[V, U] = { S | V ⊆ S ⊆ U }`, or the
/// empty collection.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Interval {
    Empty,
    Range { lower: StateSet, upper: StateSet },
}

/// `(|V|, |U|)` of a non-empty interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntervalType {
    pub v: usize,
    pub u: usize,
}

impl Interval {
    pub fn interval_type(&self) -> Option<IntervalType> {
        match self {
            Interval::Empty => None,
            Interval::Range { lower, upper } => Some(IntervalType {
                v: lower.len(),
                u: upper.len(),
            }),
        }
    }
}

/// Recognize a collection of sets as an interval. `V` is the intersection of
/// the members and `U` their union; the collection is an interval iff it has
/// exactly `2^|U \ V|` distinct members.
pub fn recognize_interval(members: &[StateSet]) -> Option<Interval> {
    let Some(first) = members.first() else {
        return Some(Interval::Empty);
    };
    let mut distinct = members.to_vec();
    distinct.sort();
    distinct.dedup();
    let (mut lower, mut upper) = (first.clone(), first.clone());
    for s in &distinct {
        lower.intersect_with(s);
        upper.union_with(s);
    }
    let free = upper.len() - lower.len();
    if free >= usize::BITS as usize || distinct.len() != 1usize << free {
        return None;
    }
    Some(Interval::Range { lower, upper })
}
