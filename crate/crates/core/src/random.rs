//! Seeded generators for test and suite instances.

use rand::seq::{IteratorRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use std::collections::BTreeMap;

use crate::algebra::{PartialAlgebra, Signature};
use crate::category::{functor_f, DerivedHom, Simulation, VectorSimulation};
use crate::checks::Instance;
use crate::correspondence::f_of_language;
use crate::language::{prefix_close, union_alphabet, PrefixLanguage};
use crate::symbol::{Alphabet, Symbol};
use crate::term::EPSILON;
use crate::trace::Trace;
use crate::vector::{vfs, VectorLanguage};

pub type InstanceRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> InstanceRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Size limits for generated instances.
#[derive(Clone, Debug)]
pub struct GenConfig {
    pub max_sigma: usize,
    pub min_components: usize,
    pub max_components: usize,
    /// Depth of every generated language; traces stay strictly shorter.
    pub depth: usize,
    /// Longest generated trace, capped at `depth - 1`.
    pub max_len: usize,
    /// Number of growth steps per language.
    pub max_growth: usize,
    /// Extra unary algebras per instance.
    pub algebras: usize,
    pub max_carrier: usize,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            max_sigma: 5,
            min_components: 2,
            max_components: 3,
            depth: 6,
            max_len: 3,
            max_growth: 5,
            algebras: 2,
            max_carrier: 4,
        }
    }
}

/// Symbols `a`, `b`, … of the first `n` letters.
pub fn letters(n: usize) -> Alphabet {
    (b'a'..=b'z')
        .take(n)
        .map(|c| Symbol::new(&(c as char).to_string()).expect("letters are symbols"))
        .collect()
}

/// A random prefix-closed language over `alpha` grown from ε by extending
/// random members; its traces are shorter than `depth`, so it is complete.
pub fn random_language<R: Rng>(
    rng: &mut R,
    alpha: &Alphabet,
    depth: usize,
    max_len: usize,
    max_growth: usize,
) -> PrefixLanguage {
    let max_len = max_len.min(depth.saturating_sub(1));
    let mut traces = vec![Trace::empty()];
    let steps = rng.gen_range(0..=max_growth);
    for _ in 0..steps {
        let open: Vec<&Trace> = traces.iter().filter(|t| t.len() < max_len).collect();
        let (Some(base), Some(sym)) = (open.choose(rng), alpha.iter().choose(rng)) else {
            break;
        };
        let next = base.extended(sym);
        if !traces.contains(&next) {
            traces.push(next);
        }
    }
    PrefixLanguage::new(alpha.clone(), traces, depth).expect("generated languages are valid")
}

/// A random unary algebra over the language signature of `sigma` with at
/// most `max_carrier` elements named `0`, `1`, ….
pub fn random_unary_algebra<R: Rng>(
    rng: &mut R,
    sigma: &Alphabet,
    max_carrier: usize,
) -> PartialAlgebra {
    let n = rng.gen_range(1..=max_carrier.max(1));
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let eps = rng.gen_range(0..n);
    let mut tables = std::collections::BTreeMap::new();
    tables.insert(EPSILON.to_string(), [(vec![], eps)].into_iter().collect());
    for s in sigma {
        let mut table = std::collections::BTreeMap::new();
        for e in 0..n {
            if rng.gen_bool(2.0 / 3.0) {
                table.insert(vec![e], rng.gen_range(0..n));
            }
        }
        tables.insert(s.name().to_string(), table);
    }
    PartialAlgebra::new(Signature::language(sigma), names, tables)
        .expect("generated algebras are valid")
}

/// A random instance: a global alphabet, 2–3 component languages over
/// random sub-alphabets, and a few unary algebras.
pub fn random_instance<R: Rng>(rng: &mut R, cfg: &GenConfig) -> Instance {
    let sigma = letters(rng.gen_range(1..=cfg.max_sigma.max(1)));
    let n = rng.gen_range(cfg.min_components..=cfg.max_components.max(cfg.min_components));
    let parts = (0..n)
        .map(|_| {
            let size = rng.gen_range(1..=sigma.len().min(3));
            let alpha: Alphabet = sigma
                .iter()
                .cloned()
                .choose_multiple(rng, size)
                .into_iter()
                .collect();
            random_language(rng, &alpha, cfg.depth, cfg.max_len, cfg.max_growth)
        })
        .collect();
    let algebras = (0..cfg.algebras)
        .map(|_| random_unary_algebra(rng, &sigma, cfg.max_carrier))
        .collect();
    Instance::new(sigma, parts)
        .expect("parts lie within sigma")
        .with_algebras(algebras)
}

/// Adds up to `max_junk` elements named `j0`, `j1`, … that no constant
/// reaches; operations on them stay among them.
pub fn with_junk<R: Rng>(rng: &mut R, a: &PartialAlgebra, max_junk: usize) -> PartialAlgebra {
    let n = a.len();
    let junk = rng.gen_range(0..=max_junk);
    let mut names = a.names().to_vec();
    names.extend((0..junk).map(|i| format!("j{i}")));
    let mut tables = BTreeMap::new();
    for (op, arity) in a.signature().ops() {
        let mut table = a.table(op).expect("every operator has a table").clone();
        if arity == 1 {
            for e in n..n + junk {
                if rng.gen_bool(0.5) {
                    table.insert(vec![e], rng.gen_range(n..n + junk));
                }
            }
        }
        tables.insert(op.to_string(), table);
    }
    PartialAlgebra::new(a.signature().clone(), names, tables).expect("junk keeps the algebra valid")
}

fn random_word<R: Rng>(rng: &mut R, alpha: &Alphabet, max_len: usize) -> Trace {
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .filter_map(|_| alpha.iter().choose(rng).cloned())
        .collect()
}

/// Grows `traces` by a few random one-symbol extensions, keeping lengths
/// at most `max_len`.
fn grow<R: Rng>(
    rng: &mut R,
    traces: &mut Vec<Trace>,
    alpha: &Alphabet,
    max_len: usize,
    steps: usize,
) {
    for _ in 0..rng.gen_range(0..=steps) {
        let open: Vec<&Trace> = traces.iter().filter(|t| t.len() < max_len).collect();
        let (Some(base), Some(sym)) = (open.choose(rng), alpha.iter().choose(rng)) else {
            break;
        };
        let next = base.extended(sym);
        if !traces.contains(&next) {
            traces.push(next);
        }
    }
}

/// The image of `t` under a symbol map.
fn image_of(map: &BTreeMap<Symbol, Trace>, t: &Trace) -> Trace {
    t.symbols()
        .iter()
        .flat_map(|s| map[s].symbols().to_vec())
        .collect()
}

/// A weak simulation from `lang` whose images are words of length at most
/// `max_image` over `target`. The target language is the prefix closure of
/// the image of `lang`, grown by up to `growth` random traces, so the
/// simulation property holds by construction. The target is complete.
pub fn image_simulation<R: Rng>(
    rng: &mut R,
    lang: &PrefixLanguage,
    target: &Alphabet,
    max_image: usize,
    growth: usize,
) -> Simulation {
    let map: BTreeMap<Symbol, Trace> = lang
        .alphabet()
        .iter()
        .map(|s| (s.clone(), random_word(rng, target, max_image)))
        .collect();
    let mut traces: Vec<Trace> = prefix_close(lang.traces().iter().map(|t| image_of(&map, t)))
        .into_iter()
        .collect();
    let longest = lang.max_len() * max_image + 1;
    grow(rng, &mut traces, target, longest, growth);
    let tgt = PrefixLanguage::from_traces(target.clone(), traces, longest + 1)
        .expect("images are traces over the target");
    Simulation::new(lang.clone(), tgt, map).expect("maps are total")
}

/// A weak simulation `f: L → L′` over a global alphabet of at most
/// `max_sigma` letters. `L` uses one or two symbols with traces of length
/// at most two and each image has length at most two.
pub fn random_simulation<R: Rng>(rng: &mut R, max_sigma: usize) -> (Alphabet, Simulation) {
    let sigma = letters(rng.gen_range(2..=max_sigma.max(2)));
    let k = rng.gen_range(1..=2);
    let src: Alphabet = sigma
        .iter()
        .cloned()
        .choose_multiple(rng, k)
        .into_iter()
        .collect();
    let size = rng.gen_range(1..=sigma.len().min(3));
    let tgt: Alphabet = sigma
        .iter()
        .cloned()
        .choose_multiple(rng, size)
        .into_iter()
        .collect();
    let lang = random_language(rng, &src, 3, 2, 4);
    (sigma, image_simulation(rng, &lang, &tgt, 2, 3))
}

/// A derived homomorphism `𝔽(f): F(L) → B` with `B` an extension of
/// `F(L′)` by unreachable junk.
pub fn random_derived_hom<R: Rng>(
    rng: &mut R,
    max_sigma: usize,
) -> (PartialAlgebra, PartialAlgebra, DerivedHom) {
    let (sigma, f) = random_simulation(rng, max_sigma);
    let h = functor_f(&f, &sigma).expect("generated maps are simulations");
    let a = f_of_language(f.source(), &sigma).expect("source lies within sigma");
    let b = f_of_language(f.target(), &sigma).expect("target lies within sigma");
    (a, with_junk(rng, &b, 2), h)
}

/// Vector firing sequences of complete `parts` at a depth where they are
/// themselves complete.
pub fn saturated_vfs(parts: &[PrefixLanguage]) -> VectorLanguage {
    let depth = parts.iter().map(PrefixLanguage::max_len).sum::<usize>() + 1;
    vfs(parts, depth).expect("parts are complete")
}

/// Component languages for a concurrency-preserving map out of `parts`.
/// Each symbol `σ` gets one or two copies `σ1`, `σ2` with the same support
/// and maps to a word of at most two of its copies. Each target component
/// is the image of its source component grown by random traces.
pub fn copy_simulation<R: Rng>(
    rng: &mut R,
    parts: &[PrefixLanguage],
) -> (Vec<PrefixLanguage>, BTreeMap<Symbol, Trace>) {
    let used = union_alphabet(parts.iter().map(PrefixLanguage::alphabet));
    let copies: BTreeMap<Symbol, Alphabet> = used
        .iter()
        .map(|s| {
            let k = rng.gen_range(1..=2);
            let names =
                (1..=k).map(|i| Symbol::new(&format!("{s}{i}")).expect("copies are symbols"));
            (s.clone(), names.collect())
        })
        .collect();
    let map: BTreeMap<Symbol, Trace> = copies
        .iter()
        .map(|(s, c)| (s.clone(), random_word(rng, c, 2)))
        .collect();
    let targets = parts
        .iter()
        .map(|p| {
            let alpha: Alphabet = p
                .alphabet()
                .iter()
                .flat_map(|s| copies[s].iter().cloned())
                .collect();
            let mut traces: Vec<Trace> = prefix_close(p.traces().iter().map(|t| image_of(&map, t)))
                .into_iter()
                .collect();
            let longest = 2 * p.max_len() + 1;
            grow(rng, &mut traces, &alpha, longest, 2);
            PrefixLanguage::from_traces(alpha, traces, longest + 1)
                .expect("images are traces over the copies")
        })
        .collect();
    (targets, map)
}

/// Random component languages for a vector simulation.
pub fn random_parts<R: Rng>(rng: &mut R, sigma: &Alphabet) -> Vec<PrefixLanguage> {
    let n = rng.gen_range(2..=3);
    (0..n)
        .map(|_| {
            let size = rng.gen_range(1..=sigma.len().min(2));
            let alpha: Alphabet = sigma
                .iter()
                .cloned()
                .choose_multiple(rng, size)
                .into_iter()
                .collect();
            random_language(rng, &alpha, 3, 2, 3)
        })
        .collect()
}

/// A vector simulation between saturated vector firing sequences, built
/// by [`copy_simulation`]. Returns the global alphabet and the map.
pub fn random_vector_simulation<R: Rng>(
    rng: &mut R,
    max_sigma: usize,
) -> (Alphabet, VectorSimulation) {
    let sigma = letters(rng.gen_range(2..=max_sigma.max(2)));
    let parts = random_parts(rng, &sigma);
    let (targets, map) = copy_simulation(rng, &parts);
    let global: Alphabet = sigma
        .iter()
        .chain(targets.iter().flat_map(PrefixLanguage::alphabet))
        .cloned()
        .collect();
    let f = VectorSimulation::new(saturated_vfs(&parts), saturated_vfs(&targets), map)
        .expect("copies preserve concurrency");
    (global, f)
}
