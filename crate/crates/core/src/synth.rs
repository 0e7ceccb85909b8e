//! Seeded synthetic diaries.
//!
//! The real contact-diary data is private, so tests and demos run on
//! generated diaries. Output is a pure function of `(seed, profile)`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::attr::{AttributeValue, Date, Period};
use crate::diary::{Attributes, Contact, Diary, DiaryError, Ego, Tie};
use crate::schema::{AttributeSchema, FEELING_SCALE, LIKING_SCALE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CountSpec {
    Exactly(u32),
    /// Uniform over the inclusive range.
    Range([u32; 2]),
    /// Exact number of contacts per ego, spread unevenly over its ties.
    Total(u32),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Marginals {
    pub male_share: f64,
    pub tie_age: [u32; 2],
    pub ego_age: [u32; 2],
    pub married_share: f64,
    pub stranger_share: f64,
    pub years_known: [f64; 2],
    /// Weights over the liking scale, lowest level first.
    pub liking_weights: Vec<f64>,
    /// Weights over the feeling scale, worst first.
    pub feeling_weights: Vec<f64>,
    pub duration_minutes: [f64; 2],
    pub period: Period,
}

impl Default for Marginals {
    fn default() -> Self {
        Self {
            male_share: 0.5,
            tie_age: [0, 95],
            ego_age: [18, 80],
            married_share: 0.5,
            stranger_share: 0.05,
            years_known: [0.0, 40.0],
            liking_weights: vec![1.0, 2.0, 4.0, 3.0],
            feeling_weights: vec![1.0, 2.0, 4.0, 4.0, 2.0],
            duration_minutes: [5.0, 240.0],
            period: Period {
                from: Date::new(2004, 1, 1).expect("valid"),
                to: Date::new(2004, 3, 31).expect("valid"),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynthProfile {
    pub egos: u32,
    pub ties_per_ego: CountSpec,
    pub contacts_per_tie: CountSpec,
    #[serde(default)]
    pub marginals: Marginals,
}

impl SynthProfile {
    /// One ego with 819 ties and 4,091 contacts: the largest tree in the
    /// original dataset.
    pub fn stress() -> Self {
        Self {
            egos: 1,
            ties_per_ego: CountSpec::Exactly(819),
            contacts_per_tie: CountSpec::Total(4091),
            marginals: Marginals::default(),
        }
    }

    /// A handful of egos with a few dozen ties each.
    pub fn small() -> Self {
        Self {
            egos: 3,
            ties_per_ego: CountSpec::Range([4, 40]),
            contacts_per_tie: CountSpec::Range([0, 8]),
            marginals: Marginals::default(),
        }
    }

    pub fn validate(&self) -> Result<(), DiaryError> {
        let bad = |m: String| Err(DiaryError::InvalidProfile(m));
        if self.egos == 0 {
            return bad("ego count must be positive".into());
        }
        for (name, spec) in [("ties_per_ego", self.ties_per_ego), ("contacts_per_tie", self.contacts_per_tie)] {
            if let CountSpec::Range([lo, hi]) = spec {
                if lo > hi {
                    return bad(format!("{name} range [{lo}, {hi}] is empty"));
                }
            }
        }
        if matches!(self.ties_per_ego, CountSpec::Total(_)) {
            return bad("ties_per_ego does not accept a total".into());
        }
        if let (CountSpec::Total(n), CountSpec::Exactly(0)) = (self.contacts_per_tie, self.ties_per_ego) {
            if n > 0 {
                return bad("contact total needs at least one tie".into());
            }
        }
        let m = &self.marginals;
        for (name, share) in [
            ("male_share", m.male_share),
            ("married_share", m.married_share),
            ("stranger_share", m.stranger_share),
        ] {
            if !(0.0..=1.0).contains(&share) {
                return bad(format!("{name} must lie in [0, 1]"));
            }
        }
        for (name, w, n) in [
            ("liking_weights", &m.liking_weights, LIKING_SCALE.len()),
            ("feeling_weights", &m.feeling_weights, FEELING_SCALE.len()),
        ] {
            if w.len() != n {
                return bad(format!("{name} needs {n} weights, got {}", w.len()));
            }
            if w.iter().any(|x| !x.is_finite() || *x < 0.0) || w.iter().sum::<f64>() <= 0.0 {
                return bad(format!("{name} must be non-negative with a positive sum"));
            }
        }
        if m.tie_age[0] > m.tie_age[1] || m.ego_age[0] > m.ego_age[1] {
            return bad("age ranges must be ascending".into());
        }
        let ranges_ok = |r: [f64; 2]| r[0].is_finite() && r[1].is_finite() && 0.0 <= r[0] && r[0] <= r[1];
        if !ranges_ok(m.years_known) || !ranges_ok(m.duration_minutes) {
            return bad("years_known and duration_minutes must be ascending non-negative ranges".into());
        }
        Ok(())
    }
}

fn pick_weighted(rng: &mut ChaCha8Rng, weights: &[f64]) -> usize {
    let total: f64 = weights.iter().sum();
    let mut x = rng.gen::<f64>() * total;
    for (i, w) in weights.iter().enumerate() {
        if x < *w {
            return i;
        }
        x -= w;
    }
    weights.iter().rposition(|w| *w > 0.0).unwrap_or(0)
}

fn count(rng: &mut ChaCha8Rng, spec: CountSpec) -> u32 {
    match spec {
        CountSpec::Exactly(n) | CountSpec::Total(n) => n,
        CountSpec::Range([lo, hi]) => rng.gen_range(lo..=hi),
    }
}

/// Splits `total` contacts over `ties` slots: every slot gets one while
/// enough remain, the rest follow heavy-tailed random weights.
fn split_total(rng: &mut ChaCha8Rng, ties: usize, total: u32) -> Vec<u32> {
    let mut out = vec![0u32; ties];
    if ties == 0 {
        return out;
    }
    let mut left = total;
    if total as usize >= ties {
        out.iter_mut().for_each(|c| *c = 1);
        left -= ties as u32;
    }
    let mut cumulative = Vec::with_capacity(ties);
    let mut acc = 0.0;
    for _ in 0..ties {
        let u: f64 = rng.gen_range(0.0..1.0);
        // Pareto-ish tail: a few ties collect most extra contacts.
        acc += libm::pow(1.0 - u, -0.6);
        cumulative.push(acc);
    }
    for _ in 0..left {
        let x = rng.gen::<f64>() * acc;
        let i = cumulative.partition_point(|c| *c <= x).min(ties - 1);
        out[i] += 1;
    }
    out
}

fn round1(x: f64) -> f64 {
    libm::round(x * 10.0) / 10.0
}

pub fn generate_synthetic_diary(seed: u64, profile: &SynthProfile) -> Result<Diary, DiaryError> {
    profile.validate()?;
    let m = &profile.marginals;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut diary = Diary::new(AttributeSchema::canonical());
    let from = m.period.from.to_days();
    let span = m.period.to.to_days() - from;
    let ego_width = (profile.egos.max(1)).ilog10() as usize + 1;

    for e in 0..profile.egos {
        let ego_id = format!("E{:0w$}", e + 1, w = ego_width);
        let mut attrs = Attributes::new();
        let male = rng.gen_bool(m.male_share);
        attrs.insert("gender".into(), AttributeValue::text(if male { "male" } else { "female" }));
        attrs.insert("age".into(), AttributeValue::Integer(i64::from(rng.gen_range(m.ego_age[0]..=m.ego_age[1]))));
        let married = rng.gen_bool(m.married_share);
        attrs.insert(
            "marital_status".into(),
            AttributeValue::text(if married { "married" } else { "single" }),
        );
        diary.egos.push(Ego {
            id: ego_id.as_str().into(),
            attributes: attrs,
        });

        let n_ties = count(&mut rng, profile.ties_per_ego) as usize;
        let per_tie: Vec<u32> = match profile.contacts_per_tie {
            CountSpec::Total(total) => split_total(&mut rng, n_ties, total),
            spec => (0..n_ties).map(|_| count(&mut rng, spec)).collect(),
        };
        let tie_width = n_ties.max(1).ilog10() as usize + 1;

        for (t, n_contacts) in per_tie.iter().enumerate() {
            let tie_id = format!("{ego_id}-T{:0w$}", t + 1, w = tie_width);
            let mut attrs = Attributes::new();
            let male = rng.gen_bool(m.male_share);
            attrs.insert("gender".into(), AttributeValue::text(if male { "male" } else { "female" }));
            attrs.insert("age".into(), AttributeValue::Integer(i64::from(rng.gen_range(m.tie_age[0]..=m.tie_age[1]))));
            if rng.gen_bool(m.stranger_share) {
                attrs.insert("is_stranger".into(), AttributeValue::Boolean(true));
                attrs.insert("years_known".into(), AttributeValue::Real(0.0));
            } else {
                // Skewed towards short acquaintance.
                let u: f64 = rng.gen();
                let yk = m.years_known[0] + (m.years_known[1] - m.years_known[0]) * u * u;
                attrs.insert("years_known".into(), AttributeValue::Real(round1(yk)));
            }
            let liking = pick_weighted(&mut rng, &m.liking_weights) as u32;
            attrs.insert("liking".into(), AttributeValue::ordinal(liking, "liking"));
            diary.ties.push(Tie {
                id: tie_id.as_str().into(),
                ego: ego_id.as_str().into(),
                attributes: attrs,
            });

            let contact_width = (*n_contacts).max(1).ilog10() as usize + 1;
            for c in 0..*n_contacts {
                let mut attrs = Attributes::new();
                let day = from + rng.gen_range(0..=span);
                attrs.insert(
                    "date".into(),
                    AttributeValue::Date(Date::from_days(day).expect("inside profile period")),
                );
                let d = m.duration_minutes;
                attrs.insert("duration".into(), AttributeValue::Real(round1(rng.gen_range(d[0]..=d[1]))));
                let feeling = pick_weighted(&mut rng, &m.feeling_weights) as u32;
                attrs.insert("feeling".into(), AttributeValue::ordinal(feeling, "feeling"));
                diary.contacts.push(Contact {
                    id: format!("{tie_id}-C{:0w$}", c + 1, w = contact_width).into(),
                    tie: tie_id.as_str().into(),
                    attributes: attrs,
                });
            }
        }
    }
    Ok(diary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diary::{diary_stats, validate_diary};

    #[test]
    fn zero_ties_is_valid() {
        let p = SynthProfile {
            egos: 1,
            ties_per_ego: CountSpec::Exactly(0),
            contacts_per_tie: CountSpec::Range([0, 3]),
            marginals: Marginals::default(),
        };
        let d = generate_synthetic_diary(1, &p).unwrap();
        assert_eq!((d.egos.len(), d.ties.len(), d.contacts.len()), (1, 0, 0));
        assert!(validate_diary(&d).is_ok());
    }

    #[test]
    fn stress_profile_hits_exact_counts() {
        let d = generate_synthetic_diary(7, &SynthProfile::stress()).unwrap();
        let s = diary_stats(&d);
        assert_eq!(s.totals.ties, 819);
        assert_eq!(s.totals.contacts, 4091);
        assert!(validate_diary(&d).is_ok());
        assert_eq!(d, generate_synthetic_diary(7, &SynthProfile::stress()).unwrap());
    }

    #[test]
    fn invalid_profiles_rejected() {
        let mut p = SynthProfile::small();
        p.egos = 0;
        assert!(matches!(generate_synthetic_diary(1, &p), Err(DiaryError::InvalidProfile(_))));
        let mut p = SynthProfile::small();
        p.marginals.liking_weights.clear();
        assert!(generate_synthetic_diary(1, &p).is_err());
        let mut p = SynthProfile::small();
        p.ties_per_ego = CountSpec::Range([5, 2]);
        assert!(generate_synthetic_diary(1, &p).is_err());
    }

    #[test]
    fn split_total_conserves() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (ties, total) in [(1, 0), (5, 3), (10, 10), (7, 100)] {
            let v = split_total(&mut rng, ties, total);
            assert_eq!(v.iter().sum::<u32>(), total);
            if total as usize >= ties {
                assert!(v.iter().all(|c| *c >= 1));
            }
        }
    }
}
