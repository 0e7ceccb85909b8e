//! Oracles and invariant checks shared by the integration and acceptance
//! tests. Each oracle restates a rule directly rather than reusing library
//! code paths.
#![allow(dead_code)]

use std::collections::BTreeMap;

use contacttrees_core::attr::{AttributeValue, Period};
use contacttrees_core::diary::{Diary, TieId};
use contacttrees_core::geom::{point_segment_distance, segments_properly_cross, Point};
use contacttrees_core::layout::{build_skeleton, layout_tree, order_ties, LayoutError, LayoutParams, Skeleton};
use contacttrees_core::mapping::{BranchSide, MappingSpec, Resolver, Side, TieChannelValues};
use contacttrees_core::scene::SceneGraph;
use contacttrees_core::synth::{generate_synthetic_diary, CountSpec, SynthProfile};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

// ---------------------------------------------------------------- ordering

/// Whether `a` must sit left of `b` on the trunk base. Left ties come
/// first, from the lowest band up, small branches below before above; right
/// ties follow from the highest band down, above before below. Ids break
/// exact ties.
pub fn precedes(a: &TieChannelValues, b: &TieChannelValues) -> bool {
    let above = |t: &TieChannelValues| t.branch_side == BranchSide::Above;
    match (a.side, b.side) {
        (Side::Left, Side::Right) => true,
        (Side::Right, Side::Left) => false,
        (Side::Left, Side::Left) => {
            if a.band != b.band {
                a.band < b.band
            } else if above(a) != above(b) {
                !above(a)
            } else {
                a.tie < b.tie
            }
        }
        (Side::Right, Side::Right) => {
            if a.band != b.band {
                a.band > b.band
            } else if above(a) != above(b) {
                above(a)
            } else {
                a.tie < b.tie
            }
        }
    }
}

/// Brute force: repeatedly take the tie that precedes every other
/// remaining tie.
pub fn oracle_order(ties: &[TieChannelValues]) -> Vec<TieChannelValues> {
    let mut rest: Vec<TieChannelValues> = ties.to_vec();
    let mut out = Vec::with_capacity(rest.len());
    while !rest.is_empty() {
        let first = (0..rest.len())
            .find(|&i| (0..rest.len()).all(|j| i == j || precedes(&rest[i], &rest[j])))
            .expect("precedence is a strict total order");
        out.push(rest.remove(first));
    }
    out
}

pub fn random_ties(rng: &mut impl Rng, n: usize, bands: usize) -> Vec<TieChannelValues> {
    (0..n)
        .map(|i| TieChannelValues {
            tie: TieId::new(format!("T{:05}", rng.gen_range(0..100_000) * 1000 + i)),
            side: if rng.gen_bool(0.5) { Side::Left } else { Side::Right },
            band: rng.gen_range(0..bands.max(1)),
            branch_side: BranchSide::from_flag(rng.gen_bool(0.5)),
            fruit_count: rng.gen_range(0..3),
        })
        .collect()
}

// ---------------------------------------------------------------- diaries

/// A synthetic diary of random shape, with some attributes removed or
/// replaced so that a share of ties and contacts are unmappable.
pub fn random_diary(seed: u64) -> Diary {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let profile = SynthProfile {
        egos: rng.gen_range(1..4),
        ties_per_ego: CountSpec::Range([0, rng.gen_range(1..60)]),
        contacts_per_tie: if rng.gen_bool(0.5) {
            CountSpec::Range([0, rng.gen_range(0..12)])
        } else {
            CountSpec::Total(rng.gen_range(0..300))
        },
        marginals: Default::default(),
    };
    let mut diary = generate_synthetic_diary(seed, &profile).expect("valid profile");
    for tie in &mut diary.ties {
        match rng.gen_range(0..20) {
            0 => {
                tie.attributes.remove("gender");
            }
            1 => {
                tie.attributes.insert("gender".into(), AttributeValue::text("unknown"));
            }
            2 => {
                tie.attributes.remove("years_known");
            }
            3 => {
                tie.attributes.remove("liking");
            }
            _ => {}
        }
    }
    for c in &mut diary.contacts {
        if rng.gen_range(0..60) == 0 {
            c.attributes.remove("duration");
        }
    }
    diary
}

pub fn random_period(rng: &mut impl Rng) -> Option<Period> {
    if rng.gen_bool(0.5) {
        return None;
    }
    let from = rng.gen_range(1..=60);
    let to = rng.gen_range(from..=91);
    let base = contacttrees_core::Date::new(2004, 1, 1).unwrap().to_days() - 1;
    Period::new(
        contacttrees_core::Date::from_days(base + from).unwrap(),
        contacttrees_core::Date::from_days(base + to).unwrap(),
    )
}

pub fn random_params(rng: &mut impl Rng) -> LayoutParams {
    if rng.gen_bool(0.5) {
        return LayoutParams::default();
    }
    LayoutParams {
        line_spacing: rng.gen_range(1.0..4.0),
        stroke_width: rng.gen_range(0.5..3.0),
        band_height: rng.gen_range(20.0..60.0),
        seg3_step: rng.gen_range(4.0..16.0),
        seg4_angle: rng.gen_range(15.0..60.0),
        spline_samples: rng.gen_range(4..40),
        ..LayoutParams::default()
    }
}

// ---------------------------------------------------------------- conservation

const GENDERS: [&str; 2] = ["male", "female"];

/// Expected fruits of a tie under the diary-default mapping, or `None` when
/// the tie cannot be drawn (gender outside male/female, or age, years known
/// or liking absent).
pub fn default_preset_tie(diary: &Diary, tie: &contacttrees_core::Tie) -> Option<u8> {
    let a = &tie.attributes;
    match a.get("gender") {
        Some(AttributeValue::Text(g)) if GENDERS.contains(&g.as_str()) => {}
        _ => return None,
    }
    a.get("age")?;
    a.get("years_known")?;
    let AttributeValue::Ordinal { level, .. } = a.get("liking")? else {
        return None;
    };
    let entry = diary.schema.get(contacttrees_core::schema::EntityKind::Tie, "liking")?;
    match entry.scale.get(*level as usize)?.as_str() {
        "not at all" | "not much" => Some(0),
        "somewhat" => Some(1),
        "very much" => Some(2),
        _ => None,
    }
}

/// Expected fruits under liking-tenure: liking must be somewhat or very
/// much, age present, gender male (1) or female (2). Missing tenure falls
/// into the strangers band rather than excluding the tie.
pub fn tenure_preset_tie(diary: &Diary, tie: &contacttrees_core::Tie) -> Option<u8> {
    let a = &tie.attributes;
    let AttributeValue::Ordinal { level, .. } = a.get("liking")? else {
        return None;
    };
    let entry = diary.schema.get(contacttrees_core::schema::EntityKind::Tie, "liking")?;
    if !matches!(entry.scale.get(*level as usize)?.as_str(), "somewhat" | "very much") {
        return None;
    }
    a.get("age")?;
    match a.get("gender") {
        Some(AttributeValue::Text(g)) if g == "male" => Some(1),
        Some(AttributeValue::Text(g)) if g == "female" => Some(2),
        _ => None,
    }
}

pub type FruitOracle = fn(&Diary, &contacttrees_core::Tie) -> Option<u8>;

/// Fruit oracle for a preset by name.
pub fn fruit_oracle(preset: &str) -> FruitOracle {
    match preset {
        "diary-default" => default_preset_tie,
        "liking-tenure" => tenure_preset_tie,
        other => panic!("no oracle for {other}"),
    }
}

fn in_period(c: &contacttrees_core::Contact, period: Option<&Period>) -> bool {
    match (period, c.attributes.get("date")) {
        (None, _) => true,
        (Some(p), Some(AttributeValue::Date(d))) => p.contains(*d),
        (Some(_), _) => false,
    }
}

/// Conservation violations of a diary-default scene: curves are exactly the
/// mappable ties, leaves exactly their in-period contacts, and each tie's
/// fruits match the liking table.
pub fn conservation_violations(
    diary: &Diary,
    ego: &str,
    period: Option<&Period>,
    scene: &SceneGraph,
    fruit_oracle: FruitOracle,
) -> Vec<String> {
    let mut v = Vec::new();
    let mut expected_ties: BTreeMap<&str, u8> = BTreeMap::new();
    let mut expected_leaves: Vec<&str> = Vec::new();
    for tie in diary.ties.iter().filter(|t| t.ego.as_str() == ego) {
        let contacts: Vec<_> = diary
            .contacts
            .iter()
            .filter(|c| c.tie == tie.id && in_period(c, period))
            .collect();
        let leaves_ok = contacts
            .iter()
            .all(|c| ["date", "duration", "feeling"].iter().all(|k| c.attributes.contains_key(*k)));
        if let (Some(fruits), true) = (fruit_oracle(diary, tie), leaves_ok) {
            expected_ties.insert(tie.id.as_str(), fruits);
            expected_leaves.extend(contacts.iter().map(|c| c.id.as_str()));
        }
    }
    let curves: Vec<&str> = scene.curves.iter().map(|c| c.tie.as_str()).collect();
    let mut sorted_curves = curves.clone();
    sorted_curves.sort_unstable();
    if sorted_curves != expected_ties.keys().copied().collect::<Vec<_>>() {
        v.push(format!("curves {:?} != mappable ties {:?}", sorted_curves, expected_ties.keys()));
    }
    let mut leaves: Vec<&str> = scene.leaves.iter().map(|l| l.contact.as_str()).collect();
    leaves.sort_unstable();
    expected_leaves.sort_unstable();
    if leaves != expected_leaves {
        v.push(format!("{} leaves != {} in-period contacts", leaves.len(), expected_leaves.len()));
    }
    let mut fruits: BTreeMap<&str, u8> = BTreeMap::new();
    for f in &scene.fruits {
        *fruits.entry(f.tie.as_str()).or_default() += 1;
    }
    for c in &scene.curves {
        let got = fruits.get(c.tie.as_str()).copied().unwrap_or(0);
        let want = expected_ties.get(c.tie.as_str()).copied().unwrap_or(u8::MAX);
        if got != want || got > 2 || c.fruit_count != want {
            v.push(format!("tie {} has {got} fruits (channel {}), expected {want}", c.tie, c.fruit_count));
        }
    }
    let excluded = scene.meta.excluded.len();
    let total = diary.ties.iter().filter(|t| t.ego.as_str() == ego).count();
    if excluded + scene.curves.len() != total {
        v.push(format!("{excluded} excluded + {} curves != {total} ties", scene.curves.len()));
    }
    v
}

// ---------------------------------------------------------------- geometry

pub struct Tree {
    pub scene: SceneGraph,
    pub skeleton: Skeleton,
    pub params: LayoutParams,
}

/// Lays out a tree and rebuilds its skeleton from the public step functions.
pub fn tree(
    diary: &Diary,
    ego: &str,
    period: Option<&Period>,
    spec: &MappingSpec,
    params: &LayoutParams,
) -> Result<Tree, LayoutError> {
    let scene = layout_tree(diary, ego, period, spec, params)?;
    let resolver = Resolver::new(spec, &diary.schema).expect("valid mapping");
    let drawn: Vec<&str> = scene.curves.iter().map(|c| c.tie.as_str()).collect();
    let channels: Vec<TieChannelValues> = diary
        .ties
        .iter()
        .filter(|t| drawn.contains(&t.id.as_str()))
        .map(|t| resolver.resolve_tie(t).expect("drawn ties resolve"))
        .collect();
    let ordered = order_ties(channels);
    let counts: Vec<usize> = ordered
        .ties
        .iter()
        .map(|t| scene.leaves.iter().filter(|l| l.tie == t.tie).count())
        .collect();
    let skeleton = build_skeleton(&ordered, &counts, params);
    Ok(Tree {
        scene,
        skeleton,
        params: params.clone(),
    })
}

fn angle_from_vertical(d: Point) -> f64 {
    let d = d.normalized();
    d.y.clamp(-1.0, 1.0).acos().to_degrees()
}

pub fn geometry_violations(t: &Tree) -> Vec<String> {
    let mut v = Vec::new();
    let p = &t.params;
    let sk = &t.skeleton;

    // Segment 2 per band: measured length and angle.
    let mut by_band: BTreeMap<usize, (f64, f64)> = BTreeMap::new();
    for tie in &sk.ties {
        let (a, b) = tie.segment(1);
        by_band.insert(tie.band, (a.distance(b), angle_from_vertical(b - a)));
    }
    let bands: Vec<_> = by_band.iter().collect();
    for w in bands.windows(2) {
        let (&b0, &(len0, ang0)) = w[0];
        let (&b1, &(len1, ang1)) = w[1];
        if len1 >= len0 {
            v.push(format!("segment 2 length does not shrink from band {b0} ({len0}) to {b1} ({len1})"));
        }
        let floor = p.min_branch_angle;
        if ang0 > floor + 1e-9 && ang1 >= ang0 - 1e-9 {
            v.push(format!("branch angle does not sharpen from band {b0} ({ang0}) to {b1} ({ang1})"));
        }
        if ang1 > ang0 + 1e-9 || ang1 < floor - 1e-9 {
            v.push(format!("branch angle {ang1} of band {b1} outside [{floor}, {ang0}]"));
        }
    }

    // Anchors climb with band on each side.
    for side in [Side::Left, Side::Right] {
        let ys: Vec<(usize, f64)> = sk
            .branches
            .iter()
            .filter(|b| b.side == side)
            .map(|b| (b.band, b.anchor.y))
            .collect();
        for w in ys.windows(2) {
            if w[1].0 > w[0].0 && w[1].1 <= w[0].1 {
                v.push(format!("anchor of band {} not above band {}", w[1].0, w[0].0));
            }
        }
    }

    // Trunk-stage segments never properly cross.
    let segs: Vec<(usize, Point, Point)> = sk
        .ties
        .iter()
        .flat_map(|t| [(t.base_index, t.points[0], t.points[1]), (t.base_index, t.points[1], t.points[2])])
        .collect();
    'outer: for (i, a) in segs.iter().enumerate() {
        for b in &segs[i + 1..] {
            if a.0 != b.0 && segments_properly_cross(a.1, a.2, b.1, b.2) {
                v.push(format!("trunk segments of ties at base {} and {} cross", a.0, b.0));
                break 'outer;
            }
        }
    }

    // Finite numbers, glyphs inside bounds.
    if !t.scene.is_finite() {
        v.push("non-finite coordinate".into());
    }
    let bounds = t.scene.bounds.expanded(1e-9);
    for l in &t.scene.leaves {
        if !bounds.contains_circle(l.center, l.radius) {
            v.push(format!("leaf {} outside bounds", l.contact));
        }
    }
    for f in &t.scene.fruits {
        if !bounds.contains_circle(f.center, f.radius) {
            v.push(format!("fruit of {} outside bounds", f.tie));
        }
    }
    for g in &t.scene.glyphs {
        if !bounds.contains_circle(g.position, g.size / 2.0) {
            v.push("bird outside bounds".into());
        }
    }
    for c in &t.scene.curves {
        if c.chain.points().any(|q| !bounds.contains_circle(q, 0.0)) {
            v.push(format!("curve {} outside bounds", c.tie));
        }
    }
    let la = t.scene.legend_area;
    if !(bounds.contains_circle(Point::new(la.min_x, la.min_y), 0.0) && bounds.contains_circle(Point::new(la.max_x, la.max_y), 0.0)) {
        v.push("legend outside bounds".into());
    }
    v
}

// ---------------------------------------------------------------- smoothing

fn distance_to_polyline(q: Point, pts: &[Point]) -> f64 {
    pts.windows(2)
        .map(|w| point_segment_distance(q, w[0], w[1]))
        .fold(f64::INFINITY, f64::min)
}

/// Largest distance from a densely sampled chain to its polyline.
pub fn max_deviation(chain: &contacttrees_core::scene::CubicChain, pts: &[Point]) -> f64 {
    let n = chain.pieces.len() * 16;
    (0..=n)
        .map(|k| distance_to_polyline(chain.eval(k as f64 / n as f64), pts))
        .fold(0.0, f64::max)
}

pub fn smoothing_violations(t: &Tree) -> Vec<String> {
    let mut v = Vec::new();
    for (curve, sk) in t.scene.curves.iter().zip(&t.skeleton.ties) {
        if curve.tie != sk.tie {
            v.push(format!("curve {} paired with skeleton {}", curve.tie, sk.tie));
            continue;
        }
        if curve.chain.start != sk.points[0] || curve.chain.end() != sk.points[5] {
            v.push(format!("curve {} endpoints differ from its polyline", curve.tie));
        }
        // The chain interpolates uniform arc-length samples of the polyline.
        let samples = contacttrees_core::layout::sample_uniform(&sk.points, curve.chain.pieces.len() + 1);
        let n = curve.chain.pieces.len();
        for (k, s) in samples.iter().enumerate() {
            let q = curve.chain.eval(k as f64 / n as f64);
            if q.distance(*s) > 1e-9 {
                v.push(format!("curve {} misses sample {k} by {}", curve.tie, q.distance(*s)));
                break;
            }
            if distance_to_polyline(*s, &sk.points) > 1e-9 {
                v.push(format!("sample {k} of {} is off the polyline", curve.tie));
                break;
            }
        }
        let dev = max_deviation(&curve.chain, &sk.points);
        if dev >= t.params.line_spacing {
            v.push(format!("curve {} deviates {dev} from its polyline", curve.tie));
        }
    }
    v
}
