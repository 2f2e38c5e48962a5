use crate::error::{Error, Result};
use crate::semiring::{SemiringSpec, Value};
use crate::tmatrix::TemporalMatrix;
use crate::tq::{Time, TimeHorizon, Triple, TemporalQuantity};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoOccurrenceMode {
    /// Counts joint events per date.
    Instantaneous,
    /// Counts joint events up to and including each date.
    Cumulative,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Event {
    pub id: String,
    pub date: Time,
    /// 0-based participant indices.
    pub participants: Vec<usize>,
}

/// A two-mode event/participant network with event dates in
/// `[first, last]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EventTable {
    events: Vec<Event>,
    participants: usize,
    first: Time,
    last: Time,
}

impl EventTable {
    pub fn new(events: Vec<Event>, participants: usize, first: Time, last: Time) -> Result<Self> {
        if first > last {
            return Err(Error::InvalidInput(format!(
                "event window [{first}, {last}] is empty"
            )));
        }
        for e in &events {
            if e.date < first || e.date > last {
                return Err(Error::InvalidInput(format!(
                    "event {} dated {} lies outside [{first}, {last}]",
                    e.id, e.date
                )));
            }
            if let Some(p) = e.participants.iter().find(|&&p| p >= participants) {
                return Err(Error::InvalidInput(format!(
                    "event {} names participant {} of {participants}",
                    e.id,
                    p + 1
                )));
            }
        }
        Ok(EventTable {
            events,
            participants,
            first,
            last,
        })
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn participants(&self) -> usize {
        self.participants
    }

    pub fn first(&self) -> Time {
        self.first
    }

    pub fn last(&self) -> Time {
        self.last
    }

    /// The dates `[first, last]` as a half-open horizon.
    pub fn horizon(&self) -> TimeHorizon {
        TimeHorizon::new(self.first, self.last + 1).expect("first <= last")
    }
}

/// `Ai^T Ai` or `Ac^T Ac` over the combinatorial semiring, where the
/// affiliation entry of event `e` lasts `[d(e), d(e)+1)` (instantaneous) or
/// `[d(e), last+1)` (cumulative).
pub fn co_occurrence(table: &EventTable, mode: CoOccurrenceMode) -> Result<TemporalMatrix> {
    let spec = SemiringSpec::combinatorial();
    let horizon = table.horizon();
    let mut aff = TemporalMatrix::new(table.events.len(), table.participants, spec, horizon);
    for (e, event) in table.events.iter().enumerate() {
        let finish = match mode {
            CoOccurrenceMode::Instantaneous => event.date + 1,
            CoOccurrenceMode::Cumulative => table.last + 1,
        };
        let tq = TemporalQuantity::new(vec![Triple::new(event.date, finish, Value::Real(1.0))])?;
        for &p in &event.participants {
            aff.set(e, p, tq.clone())?;
        }
    }
    aff.transpose().prod(&aff)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> TemporalQuantity {
        s.parse().unwrap()
    }

    fn event(date: Time, participants: &[usize]) -> Event {
        Event {
            id: format!("e{date}"),
            date,
            participants: participants.to_vec(),
        }
    }

    #[test]
    fn single_event() {
        let t = EventTable::new(vec![event(3, &[0, 1])], 3, 1, 5).unwrap();
        let ci = co_occurrence(&t, CoOccurrenceMode::Instantaneous).unwrap();
        assert_eq!(ci.get(0, 1), &q("[(3, 4, 1)]"));
        let cc = co_occurrence(&t, CoOccurrenceMode::Cumulative).unwrap();
        assert_eq!(cc.get(0, 1), &q("[(3, 6, 1)]"));
        for k in 0..3 {
            assert!(cc.get(2, k).is_empty());
            assert!(cc.get(k, 2).is_empty());
        }
    }

    #[test]
    fn cumulative_counts_accumulate() {
        let t = EventTable::new(vec![event(3, &[0, 1]), event(4, &[0, 1])], 2, 1, 5).unwrap();
        let cc = co_occurrence(&t, CoOccurrenceMode::Cumulative).unwrap();
        assert_eq!(cc.get(0, 1), &q("[(3, 4, 1), (4, 6, 2)]"));
        assert_eq!(cc.get(0, 1), cc.get(1, 0));
        assert_eq!(cc.get(0, 0), &q("[(3, 4, 1), (4, 6, 2)]"));
    }

    #[test]
    fn events_outside_window_are_rejected() {
        assert!(EventTable::new(vec![event(7, &[0])], 1, 1, 5).is_err());
        assert!(EventTable::new(vec![event(2, &[3])], 1, 1, 5).is_err());
    }
}
