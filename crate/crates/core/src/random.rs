//! Seeded random ontologies in the axiom syntax.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GeneratorParams {
    pub max_concepts: usize,
    pub max_roles: usize,
    pub max_axioms: usize,
}

impl Default for GeneratorParams {
    fn default() -> Self {
        Self { max_concepts: 12, max_roles: 4, max_axioms: 25 }
    }
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

/// An ELH ontology: atomic inclusions, binary conjunctions, existentials on
/// both sides (sometimes with a `Top` filler) and role inclusions.
pub fn random_elh(seed: u64, p: GeneratorParams) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cs = names("A", rng.gen_range(2..=p.max_concepts.max(2)));
    let rs = names("R", rng.gen_range(1..=p.max_roles.max(1)));
    let n = rng.gen_range(1..=p.max_axioms.max(1));
    let mut out = String::new();
    for _ in 0..n {
        let c = |rng: &mut ChaCha8Rng| cs.choose(rng).unwrap().clone();
        let r = |rng: &mut ChaCha8Rng| rs.choose(rng).unwrap().clone();
        let line = match rng.gen_range(0..10) {
            0..=2 => format!("{} SubClassOf {}", c(&mut rng), c(&mut rng)),
            3 => format!("{} And {} SubClassOf {}", c(&mut rng), c(&mut rng), c(&mut rng)),
            4..=5 => format!("{} SubClassOf Exists {} {}", c(&mut rng), r(&mut rng), c(&mut rng)),
            6..=7 => format!("Exists {} {} SubClassOf {}", r(&mut rng), c(&mut rng), c(&mut rng)),
            8 => {
                if rng.gen_bool(0.5) {
                    format!("{} SubClassOf Exists {} Top", c(&mut rng), r(&mut rng))
                } else {
                    format!("Exists {} Top SubClassOf {}", r(&mut rng), c(&mut rng))
                }
            }
            _ => format!("{} SubRoleOf {}", r(&mut rng), r(&mut rng)),
        };
        out.push_str(&line);
        out.push('\n');
    }
    out
}

/// A small ALCHIQ ontology using every axiom form, including disjunction,
/// inverse roles, number restrictions and `Bottom`.
pub fn random_alchiq(seed: u64, p: GeneratorParams) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cs = names("A", rng.gen_range(2..=p.max_concepts.max(2)));
    let rs = names("R", rng.gen_range(1..=p.max_roles.max(1)));
    let n = rng.gen_range(1..=p.max_axioms.max(1));
    let mut out = String::new();
    for _ in 0..n {
        let c = |rng: &mut ChaCha8Rng| cs.choose(rng).unwrap().clone();
        let role = |rng: &mut ChaCha8Rng| {
            let r = rs.choose(rng).unwrap().clone();
            if rng.gen_bool(0.25) {
                format!("Inv {r}")
            } else {
                r
            }
        };
        let filler = |rng: &mut ChaCha8Rng| if rng.gen_bool(0.2) { "Top".to_string() } else { c(rng) };
        let line = match rng.gen_range(0..14) {
            0..=1 => format!("{} SubClassOf {}", c(&mut rng), c(&mut rng)),
            2 => format!("{} And {} SubClassOf {}", c(&mut rng), c(&mut rng), c(&mut rng)),
            3 => format!("{} SubClassOf {} Or {}", c(&mut rng), c(&mut rng), c(&mut rng)),
            4 => format!("{} And {} SubClassOf Bottom", c(&mut rng), c(&mut rng)),
            5..=6 => format!("{} SubClassOf Exists {} {}", c(&mut rng), role(&mut rng), filler(&mut rng)),
            7..=8 => format!("Exists {} {} SubClassOf {}", role(&mut rng), filler(&mut rng), c(&mut rng)),
            9 => format!(
                "{} SubClassOf AtLeast {} {} {}",
                c(&mut rng),
                rng.gen_range(1..=2),
                role(&mut rng),
                filler(&mut rng)
            ),
            10..=11 => format!(
                "{} SubClassOf AtMost {} {} {}",
                c(&mut rng),
                rng.gen_range(0..=1),
                role(&mut rng),
                filler(&mut rng)
            ),
            12 => format!("{} SubRoleOf {}", rs.choose(&mut rng).unwrap(), role(&mut rng)),
            _ => format!("{} SubClassOf {} Or {} Or {}", c(&mut rng), c(&mut rng), c(&mut rng), c(&mut rng)),
        };
        out.push_str(&line);
        out.push('\n');
    }
    out
}
