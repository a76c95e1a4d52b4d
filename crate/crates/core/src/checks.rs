//! Seeded, randomized verification suites over every module. Each suite
//! returns the first counterexample it finds, rendered in the text grammar.
//! The CLI `check` subcommand and the acceptance tests are both driven from
//! here.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::calculus::{
    binomial, counterexample_check, phi_apply, phi_shift_identity_check, rtimes_binomial_power,
    term_bound,
};
use crate::cauchy::CauchyElement;
use crate::matrix::{egf_identity_check, rtimes_matrix_check, to_matrix, Correspondence};
use crate::rational::{Field, Rational};
use crate::riordan::RiordanElement;
use crate::series::{Series, Valuation};

#[derive(Clone, Copy, Debug)]
pub struct CheckConfig {
    pub seed: u64,
    pub trials: usize,
    pub precision: usize,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            seed: 0,
            trials: 200,
            precision: 16,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CheckFailure {
    pub suite: &'static str,
    pub message: String,
}

impl std::fmt::Display for CheckFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "suite '{}' failed: {}", self.suite, self.message)
    }
}

type SuiteResult = Result<(), String>;

pub const SUITE_NAMES: &[&str] = &[
    "counterexample",
    "valuation",
    "near-algebra",
    "powers",
    "group",
    "phi",
    "cauchy",
    "matrix",
    "truncation",
];

/// Runs one named suite; `all` is accepted by the CLI layer, not here.
pub fn run_suite(name: &'static str, cfg: &CheckConfig) -> Result<(), CheckFailure> {
    let result = match name {
        "counterexample" => suite_counterexample(cfg),
        "valuation" => suite_valuation(cfg),
        "near-algebra" => suite_near_algebra(cfg),
        "powers" => suite_powers(cfg),
        "group" => suite_group(cfg),
        "phi" => suite_phi(cfg),
        "cauchy" => suite_cauchy(cfg),
        "matrix" => suite_matrix(cfg),
        "truncation" => suite_truncation(cfg),
        _ => Err(format!("unknown suite '{name}'")),
    };
    result.map_err(|message| CheckFailure {
        suite: name,
        message,
    })
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

// ---------------------------------------------------------------- random data

fn rational(rng: &mut ChaCha8Rng) -> Rational {
    if rng.gen_range(0..3) == 0 {
        Rational::from_int(0)
    } else {
        Rational::new(rng.gen_range(-6..=6), rng.gen_range(1..=4))
    }
}

fn nonzero_rational(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let r = rational(rng);
        if !r.is_zero() {
            return r;
        }
    }
}

/// Random series with a valuation spread over the whole range, including the
/// zero series.
fn series(rng: &mut ChaCha8Rng, n: usize) -> Series {
    let v = rng.gen_range(0..=n);
    let mut coeffs = vec![Rational::from_int(0); n];
    for (k, c) in coeffs.iter_mut().enumerate() {
        if k > v {
            *c = rational(rng);
        }
    }
    if v < n {
        coeffs[v] = nonzero_rational(rng);
    }
    Series::from_coeffs(coeffs).expect("n >= 1")
}

/// Random element of the substitution ideal (no constant term).
fn sigma(rng: &mut ChaCha8Rng, n: usize) -> Series {
    loop {
        let s = series(rng, n);
        if s.coeffs()[0].is_zero() {
            return s;
        }
        if s.valuation().lower_bound() >= 1 {
            return s;
        }
    }
}

fn unit_series(rng: &mut ChaCha8Rng, n: usize) -> Series {
    let mut s = series(rng, n);
    let mut coeffs = s.coeffs().to_vec();
    coeffs[0] = nonzero_rational(rng);
    s = Series::from_coeffs(coeffs).expect("n >= 1");
    s
}

fn pair(rng: &mut ChaCha8Rng, n: usize) -> RiordanElement {
    RiordanElement::new(series(rng, n), sigma(rng, n)).expect("sigma in ideal")
}

/// Random element of the ideal: val(mu) >= 1, val(sigma) >= 2.
fn ideal_element(rng: &mut ChaCha8Rng, n: usize) -> RiordanElement {
    let mut mu = sigma(rng, n).coeffs().to_vec();
    // keep mu sparse-ish so phi sums stay interesting
    let mut sig = vec![Rational::from_int(0); n];
    for c in sig.iter_mut().skip(2) {
        *c = rational(rng);
    }
    if n > 2 && rng.gen_bool(0.8) {
        sig[2] = nonzero_rational(rng);
    }
    mu[0] = Rational::from_int(0);
    RiordanElement::new(
        Series::from_coeffs(mu).expect("n >= 1"),
        Series::from_coeffs(sig).expect("n >= 1"),
    )
    .expect("ideal element")
}

fn group_element(rng: &mut ChaCha8Rng, n: usize) -> RiordanElement {
    let mut mu = series(rng, n).coeffs().to_vec();
    mu[0] = Rational::from_int(1);
    let mut sig = sigma(rng, n).coeffs().to_vec();
    sig[0] = Rational::from_int(0);
    sig[1] = Rational::from_int(1);
    RiordanElement::new(
        Series::from_coeffs(mu).expect("n >= 2"),
        Series::from_coeffs(sig).expect("n >= 2"),
    )
    .expect("group element")
}

fn small_lambda(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(rng.gen_range(-8..=8), rng.gen_range(1..=5))
}

// ------------------------------------------------------------ valuation laws

/// `val(f*g) = val(f) + val(g)` with saturation at `AtLeast(n)`.
pub fn product_law(a: Valuation, b: Valuation, n: usize) -> Valuation {
    match (a, b) {
        (Valuation::Exact(x), Valuation::Exact(y)) if x + y < n => Valuation::Exact(x + y),
        _ => Valuation::AtLeast(n),
    }
}

/// `val(f ∘ s) = val(f) * val(s)` under the convention `0 * anything = 0`,
/// saturating at `AtLeast(n)`. `s` always has valuation >= 1 here.
pub fn composition_law(f: Valuation, s: Valuation, n: usize) -> Valuation {
    match f {
        Valuation::Exact(0) => Valuation::Exact(0),
        Valuation::Exact(a) => match s {
            Valuation::Exact(b) if a * b < n => Valuation::Exact(a * b),
            _ => Valuation::AtLeast(n),
        },
        Valuation::AtLeast(_) => Valuation::AtLeast(n),
    }
}

// ------------------------------------------------------------------- suites

/// Pinned worked counterexample: the ⋊-square and the binomial square of
/// `(1+x, x+x^2)` are different, with both values matched exactly.
fn suite_counterexample(cfg: &CheckConfig) -> SuiteResult {
    for precision in [5usize, 8, cfg.precision.max(5)] {
        let ok = counterexample_check(precision).map_err(|e| e.to_string())?;
        ensure!(ok, "counterexample values not reproduced at N={precision}");
    }
    Ok(())
}

fn suite_valuation(cfg: &CheckConfig) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let n = cfg.precision;
    for trial in 0..cfg.trials {
        let f = series(&mut rng, n);
        let g = series(&mut rng, n);
        let s = sigma(&mut rng, n);

        let product = f.mul(&g).map_err(|e| e.to_string())?;
        let expected = product_law(f.valuation(), g.valuation(), n);
        ensure!(
            product.valuation() == expected,
            "trial {trial}: val(f*g) = {} but law gives {expected}; f = {f}, g = {g}",
            product.valuation()
        );

        let composed = f.substitute(&s).map_err(|e| e.to_string())?;
        let expected = composition_law(f.valuation(), s.valuation(), n);
        ensure!(
            composed.valuation() == expected,
            "trial {trial}: val(f∘s) = {} but law gives {expected}; f = {f}, s = {s}",
            composed.valuation()
        );

        // subadditivity of addition, with equality for distinct valuations
        let sum = f.add(&g).map_err(|e| e.to_string())?;
        let (vf, vg) = (f.valuation(), g.valuation());
        let min = vf.lower_bound().min(vg.lower_bound());
        ensure!(
            sum.valuation().lower_bound() >= min,
            "trial {trial}: val(f+g) < min(val f, val g) for f = {f}, g = {g}"
        );
        if vf.is_exact() && vg.is_exact() && vf != vg {
            ensure!(
                sum.valuation() == Valuation::Exact(min),
                "trial {trial}: val(f+g) != min for distinct valuations; f = {f}, g = {g}"
            );
        }

        // substitution is a ring homomorphism in its left argument
        let lhs = f.add(&g).and_then(|h| h.substitute(&s)).map_err(|e| e.to_string())?;
        let rhs = composed.add(&g.substitute(&s).map_err(|e| e.to_string())?);
        ensure!(
            rhs.as_ref() == Ok(&lhs),
            "trial {trial}: (f+g)∘s != f∘s + g∘s; f = {f}, g = {g}, s = {s}"
        );
        let lhs = f.mul(&g).and_then(|h| h.substitute(&s)).map_err(|e| e.to_string())?;
        let rhs = composed
            .mul(&g.substitute(&s).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        ensure!(
            rhs == lhs,
            "trial {trial}: (fg)∘s != (f∘s)(g∘s); f = {f}, g = {g}, s = {s}"
        );

        // injectivity of right substitution at truncation scale
        if !f.is_zero() && !s.is_zero() {
            let vfs = f.valuation().lower_bound() * s.valuation().lower_bound();
            if vfs < n {
                ensure!(
                    !f.substitute(&s).map_err(|e| e.to_string())?.is_zero(),
                    "trial {trial}: f∘s vanished for nonzero f = {f}, s = {s}"
                );
            }
        }

        // associativity of substitution
        let t = sigma(&mut rng, n);
        let lhs = f
            .substitute(&s)
            .and_then(|h| h.substitute(&t))
            .map_err(|e| e.to_string())?;
        let rhs = f
            .substitute(&s.substitute(&t).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        ensure!(
            lhs == rhs,
            "trial {trial}: (f∘s)∘t != f∘(s∘t); f = {f}, s = {s}, t = {t}"
        );

        // mul_inverse really inverts units
        let u = unit_series(&mut rng, n);
        let inv = u.mul_inverse().map_err(|e| e.to_string())?;
        ensure!(
            u.mul(&inv).map_err(|e| e.to_string())? == Series::one(n).map_err(|e| e.to_string())?,
            "trial {trial}: u * u^-1 != 1 for u = {u}"
        );
    }
    Ok(())
}

fn suite_near_algebra(cfg: &CheckConfig) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let n = cfg.precision;
    let zero = RiordanElement::zero(n).map_err(|e| e.to_string())?;
    for trial in 0..cfg.trials {
        let a = pair(&mut rng, n);
        let b = pair(&mut rng, n);
        let c = pair(&mut rng, n);

        let lhs = a.rtimes(&b).and_then(|p| p.rtimes(&c)).map_err(|e| e.to_string())?;
        let rhs = a
            .rtimes(&b.rtimes(&c).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        ensure!(lhs == rhs, "trial {trial}: associativity failed for a = {a}, b = {b}, c = {c}");

        let lhs = a.add(&b).and_then(|s| s.rtimes(&c)).map_err(|e| e.to_string())?;
        let bc = b.rtimes(&c).map_err(|e| e.to_string())?;
        let rhs = a.rtimes(&c).and_then(|p| p.add(&bc)).map_err(|e| e.to_string())?;
        ensure!(lhs == rhs, "trial {trial}: right distributivity failed for a = {a}, b = {b}, c = {c}");

        let alpha = rational(&mut rng);
        let lhs = a.scale(&alpha).rtimes(&c).map_err(|e| e.to_string())?;
        let rhs = a.rtimes(&c).map_err(|e| e.to_string())?.scale(&alpha);
        ensure!(lhs == rhs, "trial {trial}: scalar compatibility failed for a = {a}, c = {c}");

        ensure!(
            zero.rtimes(&a).map_err(|e| e.to_string())?.is_zero()
                && a.rtimes(&zero).map_err(|e| e.to_string())?.is_zero(),
            "trial {trial}: (0,0) is not a two-sided zero against a = {a}"
        );

        // zero divisors: (mu, 0) ⋊ (0, sigma) = (0, 0)
        let left = RiordanElement::new(
            series(&mut rng, n),
            Series::zero(n).map_err(|e| e.to_string())?,
        )
        .map_err(|e| e.to_string())?;
        let right = RiordanElement::new(
            Series::zero(n).map_err(|e| e.to_string())?,
            sigma(&mut rng, n),
        )
        .map_err(|e| e.to_string())?;
        ensure!(
            left.rtimes(&right).map_err(|e| e.to_string())?.is_zero(),
            "trial {trial}: zero-divisor identity failed for {left} ⋊ {right}"
        );
    }

    // pinned left-distributivity failure witness, from x^2 ∘ (x - x) = 0 but
    // x^2∘x + x^2∘(-x) = 2x^2
    let a = RiordanElement::new(
        Series::zero(n).map_err(|e| e.to_string())?,
        Series::monomial(Rational::from_int(1), 2, n).map_err(|e| e.to_string())?,
    )
    .map_err(|e| e.to_string())?;
    let b = RiordanElement::new(
        Series::zero(n).map_err(|e| e.to_string())?,
        Series::x(n).map_err(|e| e.to_string())?,
    )
    .map_err(|e| e.to_string())?;
    let b_plus_b = b.add(&b).map_err(|e| e.to_string())?;
    let lhs = a.rtimes(&b_plus_b).map_err(|e| e.to_string())?;
    let ab = a.rtimes(&b).map_err(|e| e.to_string())?;
    let rhs = ab.add(&ab).map_err(|e| e.to_string())?;
    ensure!(lhs != rhs, "left distributivity unexpectedly held on the pinned witness");
    let four_x2 = Series::monomial(Rational::from_int(4), 2, n).map_err(|e| e.to_string())?;
    ensure!(
        lhs.sigma() == &four_x2,
        "pinned witness: sigma of a⋊(b+b) is {} but x^2∘(2x) = 4x^2",
        lhs.sigma()
    );
    let two_x2 = Series::monomial(Rational::from_int(2), 2, n).map_err(|e| e.to_string())?;
    ensure!(
        rhs.sigma() == &two_x2,
        "pinned witness: sigma of a⋊b + a⋊b is {} but expected 2x^2",
        rhs.sigma()
    );
    Ok(())
}

fn suite_powers(cfg: &CheckConfig) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let n = cfg.precision;
    for trial in 0..cfg.trials {
        let a = pair(&mut rng, n);

        // closed form equals the iterated product
        let mut iterated = RiordanElement::identity(n).map_err(|e| e.to_string())?;
        for k in 0..=6usize {
            let closed = a.rtimes_power(k).map_err(|e| e.to_string())?;
            ensure!(
                closed == iterated,
                "trial {trial}: closed-form power {k} differs from iterated ⋊ for a = {a}"
            );
            iterated = iterated.rtimes(&a).map_err(|e| e.to_string())?;
        }

        // additivity on exponents
        let (p, q) = (rng.gen_range(0..4usize), rng.gen_range(0..4usize));
        let lhs = a.rtimes_power(p + q).map_err(|e| e.to_string())?;
        let aq = a.rtimes_power(q).map_err(|e| e.to_string())?;
        let rhs = a
            .rtimes_power(p)
            .and_then(|x| x.rtimes(&aq))
            .map_err(|e| e.to_string())?;
        ensure!(lhs == rhs, "trial {trial}: power additivity failed for a = {a}, p = {p}, q = {q}");

        // degenerate case (mu, 0): (mu mu(0)^{n-1}, 0) for n >= 1
        let mu = series(&mut rng, n);
        let m = RiordanElement::new(mu.clone(), Series::zero(n).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        for k in 1..=4usize {
            let expected_mu = {
                let mut c = Rational::from_int(1);
                for _ in 1..k {
                    c = c.mul(mu.coeff(0).map_err(|e| e.to_string())?);
                }
                mu.scale(&c)
            };
            let got = m.rtimes_power(k).map_err(|e| e.to_string())?;
            ensure!(
                got.mu() == &expected_mu && got.sigma().is_zero(),
                "trial {trial}: (mu,0)^⋊{k} mismatch for mu = {mu}"
            );
        }

        // degenerate case (0, sigma): (0, sigma^{∘n})
        let s = sigma(&mut rng, n);
        let z = RiordanElement::new(Series::zero(n).map_err(|e| e.to_string())?, s.clone())
            .map_err(|e| e.to_string())?;
        for k in 1..=4usize {
            let got = z.rtimes_power(k).map_err(|e| e.to_string())?;
            ensure!(
                got.mu().is_zero() && got.sigma() == &s.comp_power(k).map_err(|e| e.to_string())?,
                "trial {trial}: (0,sigma)^⋊{k} mismatch for sigma = {s}"
            );
        }
    }
    Ok(())
}

fn suite_group(cfg: &CheckConfig) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let n = cfg.precision;
    let id = RiordanElement::identity(n).map_err(|e| e.to_string())?;
    for trial in 0..cfg.trials {
        let a = group_element(&mut rng, n);
        let b = group_element(&mut rng, n);

        let inv = a.group_inverse().map_err(|e| e.to_string())?;
        ensure!(
            a.rtimes(&inv).map_err(|e| e.to_string())? == id
                && inv.rtimes(&a).map_err(|e| e.to_string())? == id,
            "trial {trial}: a ⋊ a^-1 != (1,x) for a = {a}"
        );
        ensure!(inv.is_group(), "trial {trial}: inverse left the group for a = {a}");
        ensure!(
            inv.group_inverse().map_err(|e| e.to_string())? == a,
            "trial {trial}: double inverse is not the identity map for a = {a}"
        );

        ensure!(
            a.rtimes(&b).map_err(|e| e.to_string())?.is_group(),
            "trial {trial}: product left the group for a = {a}, b = {b}"
        );

        let lambda = small_lambda(&mut rng);
        let gp = rtimes_binomial_power(&a, &lambda).map_err(|e| e.to_string())?;
        ensure!(
            gp.is_group(),
            "trial {trial}: binomial power (lambda = {lambda}) left the group for a = {a}"
        );
    }
    Ok(())
}

fn suite_phi(cfg: &CheckConfig) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let n = cfg.precision;
    for trial in 0..cfg.trials {
        let base = ideal_element(&mut rng, n);
        let f = series(&mut rng, n);
        let g = series(&mut rng, n);

        // linearity
        let (alpha, beta) = (rational(&mut rng), rational(&mut rng));
        let combo = f.scale(&alpha).add(&g.scale(&beta)).map_err(|e| e.to_string())?;
        let lhs = phi_apply(&base, &combo).map_err(|e| e.to_string())?;
        let rhs = phi_apply(&base, &f)
            .map_err(|e| e.to_string())?
            .scale(&alpha)
            .add(&phi_apply(&base, &g).map_err(|e| e.to_string())?.scale(&beta))
            .map_err(|e| e.to_string())?;
        ensure!(lhs == rhs, "trial {trial}: phi not linear at base = {base}");

        // phi(x) = base
        let x = Series::x(n).map_err(|e| e.to_string())?;
        ensure!(
            phi_apply(&base, &x).map_err(|e| e.to_string())? == base,
            "trial {trial}: phi(x) != base for base = {base}"
        );

        // shift identity for m <= 4
        for m in 0..=4usize {
            if m >= n {
                break;
            }
            ensure!(
                phi_shift_identity_check(&base, &g, m).map_err(|e| e.to_string())?,
                "trial {trial}: shift identity failed at m = {m}, base = {base}, g = {g}"
            );
        }

        // range refinements
        let mut in_ideal = f.coeffs().to_vec();
        in_ideal[0] = Rational::from_int(0);
        let in_ideal = Series::from_coeffs(in_ideal).map_err(|e| e.to_string())?;
        ensure!(
            phi_apply(&base, &in_ideal).map_err(|e| e.to_string())?.is_ideal(),
            "trial {trial}: phi(f) left the ideal for f in M, base = {base}"
        );
        let mut unital = f.coeffs().to_vec();
        unital[0] = Rational::from_int(1);
        let unital = Series::from_coeffs(unital).map_err(|e| e.to_string())?;
        ensure!(
            phi_apply(&base, &unital).map_err(|e| e.to_string())?.is_group(),
            "trial {trial}: phi(f) not in the Riordan group for f with f(0)=1, base = {base}"
        );

        // term bound soundness: summing past the bound changes nothing, and
        // the tail powers vanish modulo x^N
        let bound = term_bound(&base, n).map_err(|e| e.to_string())?;
        let phi = phi_apply(&base, &f).map_err(|e| e.to_string())?;
        let mut extended = RiordanElement::zero(n).map_err(|e| e.to_string())?;
        for k in 0..(bound + 3).min(n) {
            let power = base.rtimes_power(k).map_err(|e| e.to_string())?;
            if k >= bound {
                ensure!(
                    power.is_zero(),
                    "trial {trial}: base^⋊{k} nonzero past term bound {bound}, base = {base}"
                );
            }
            extended = extended
                .add(&power.scale(f.coeff(k).map_err(|e| e.to_string())?))
                .map_err(|e| e.to_string())?;
        }
        ensure!(
            extended == phi,
            "trial {trial}: extending the sum past the bound changed phi at base = {base}"
        );

        // injectivity at desk scale
        if !f.is_zero() {
            let vf = f.valuation().lower_bound();
            if !base.rtimes_power(vf).map_err(|e| e.to_string())?.is_zero() {
                ensure!(
                    !phi.is_zero(),
                    "trial {trial}: phi(f) = (0,0) for nonzero f = {f}, base = {base}"
                );
            }
        }
    }
    Ok(())
}

fn suite_cauchy(cfg: &CheckConfig) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let n = cfg.precision;
    for trial in 0..cfg.trials {
        let base = ideal_element(&mut rng, n);
        let unit = CauchyElement::unit(&base).map_err(|e| e.to_string())?;

        let a = CauchyElement::from_series(&base, series(&mut rng, n)).map_err(|e| e.to_string())?;
        let b = CauchyElement::from_series(&base, series(&mut rng, n)).map_err(|e| e.to_string())?;
        let c = CauchyElement::from_series(&base, series(&mut rng, n)).map_err(|e| e.to_string())?;

        // commutative algebra axioms
        ensure!(
            a.star_mul(&b).map_err(|e| e.to_string())?
                == b.star_mul(&a).map_err(|e| e.to_string())?,
            "trial {trial}: star product not commutative"
        );
        let lhs = a.star_mul(&b).and_then(|p| p.star_mul(&c)).map_err(|e| e.to_string())?;
        let rhs = a
            .star_mul(&b.star_mul(&c).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        ensure!(lhs == rhs, "trial {trial}: star product not associative");
        let lhs = a.add(&b).and_then(|s| s.star_mul(&c)).map_err(|e| e.to_string())?;
        let bc = b.star_mul(&c).map_err(|e| e.to_string())?;
        let rhs = a.star_mul(&c).and_then(|p| p.add(&bc)).map_err(|e| e.to_string())?;
        ensure!(lhs == rhs, "trial {trial}: star product not distributive");
        ensure!(
            a.star_mul(&unit).map_err(|e| e.to_string())? == a,
            "trial {trial}: unit law failed"
        );

        // monomials realize as ⋊-powers
        let (d, e) = (rng.gen_range(0..3usize), rng.gen_range(0..3usize));
        let dd = CauchyElement::delta(&base, d).map_err(|e| e.to_string())?;
        let de = CauchyElement::delta(&base, e).map_err(|e| e.to_string())?;
        let prod = dd.star_mul(&de).map_err(|e| e.to_string())?;
        ensure!(
            prod == CauchyElement::delta(&base, d + e).map_err(|e| e.to_string())?,
            "trial {trial}: delta^({d}) * delta^({e}) != delta^({})", d + e
        );
        ensure!(
            prod.realize().map_err(|e| e.to_string())?
                == base.rtimes_power(d + e).map_err(|e| e.to_string())?,
            "trial {trial}: realized monomial product != ⋊-power at base = {base}"
        );

        // star inverse on constant-term-1 elements
        let mut rep = series(&mut rng, n).coeffs().to_vec();
        rep[0] = Rational::from_int(1);
        let u = CauchyElement::from_series(&base, Series::from_coeffs(rep).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        let inv = u.star_inverse().map_err(|e| e.to_string())?;
        ensure!(
            u.star_mul(&inv).map_err(|e| e.to_string())? == unit,
            "trial {trial}: u * u^{{*-1}} != unit for u = {u}"
        );

        // exp/log round trip
        let mut rep = series(&mut rng, n).coeffs().to_vec();
        rep[0] = Rational::from_int(0);
        let v = CauchyElement::from_series(&base, Series::from_coeffs(rep).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        ensure!(
            v.star_exp().and_then(|e| e.star_log()).map_err(|e| e.to_string())? == v,
            "trial {trial}: log(exp(v)) != v for v = {v}"
        );

        // exp(lambda log u) = u^{*lambda}
        let lambda = small_lambda(&mut rng);
        let lhs = u
            .star_log()
            .map(|l| l.scale(&lambda))
            .and_then(|l| l.star_exp())
            .map_err(|e| e.to_string())?;
        let rhs = u.star_generalized_power(&lambda).map_err(|e| e.to_string())?;
        ensure!(
            lhs == rhs,
            "trial {trial}: exp(lambda log u) != u^(*lambda) for lambda = {lambda}, u = {u}"
        );

        // one-parameter subgroup law
        let (alpha, beta) = (small_lambda(&mut rng), small_lambda(&mut rng));
        ensure!(
            u.one_parameter_check(&alpha, &beta).map_err(|e| e.to_string())?,
            "trial {trial}: one-parameter law failed for alpha = {alpha}, beta = {beta}, u = {u}"
        );

        // natural-number compatibility holds for the star powers...
        for k in 0..=5usize {
            let gp = u
                .star_generalized_power(&Rational::from_int(k as i64))
                .map_err(|e| e.to_string())?;
            ensure!(
                gp == u.star_power(k).map_err(|e| e.to_string())?,
                "trial {trial}: star generalized power != star power at k = {k}, u = {u}"
            );
        }
    }

    // ...and fails for the ⋊-series, side by side (the worked example).
    let prec = cfg.precision.max(5);
    let mut mu = vec![0i64; prec];
    mu[0] = 1;
    mu[1] = 1;
    let mut sig = vec![0i64; prec];
    sig[1] = 1;
    sig[2] = 1;
    let g = RiordanElement::new(
        Series::from_ints(&mu).map_err(|e| e.to_string())?,
        Series::from_ints(&sig).map_err(|e| e.to_string())?,
    )
    .map_err(|e| e.to_string())?;
    let binom = rtimes_binomial_power(&g, &Rational::from_int(2)).map_err(|e| e.to_string())?;
    let sq = g.rtimes_power(2).map_err(|e| e.to_string())?;
    ensure!(
        binom != sq,
        "the binomial ⋊-series unexpectedly matched the ⋊-square on (1+x, x+x^2)"
    );
    Ok(())
}

fn suite_matrix(cfg: &CheckConfig) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let n = cfg.precision.min(8).max(2);

    // Pascal's triangle from (1/(1-x), x/(1-x)), against a direct binomial
    // oracle.
    let prec = n.max(8);
    let one_minus_x = {
        let mut v = vec![0i64; prec];
        v[0] = 1;
        v[1] = -1;
        Series::from_ints(&v).map_err(|e| e.to_string())?
    };
    let mu = one_minus_x.mul_inverse().map_err(|e| e.to_string())?;
    let sig = Series::x(prec)
        .map_err(|e| e.to_string())?
        .mul(&mu)
        .map_err(|e| e.to_string())?;
    let pascal = RiordanElement::new(mu, sig).map_err(|e| e.to_string())?;
    let m = to_matrix(&pascal, 8.min(prec)).map_err(|e| e.to_string())?;
    for i in 0..m.size() {
        for j in 0..m.size() {
            let mut expected = Rational::from_int(if j <= i { 1 } else { 0 });
            for k in 0..j.min(i + 1) {
                if j <= i {
                    expected = expected
                        .mul(&Rational::from_int((i - k) as i64))
                        .mul(&Rational::new(1, (k + 1) as i64));
                }
            }
            ensure!(
                m.entry(i, j) == &expected,
                "Pascal entry ({i},{j}) = {} but C({i},{j}) = {expected}",
                m.entry(i, j)
            );
        }
    }

    let mut seen: Option<Correspondence> = None;
    for trial in 0..cfg.trials {
        let a = group_element(&mut rng, cfg.precision.max(n));
        let b = group_element(&mut rng, cfg.precision.max(n));

        // column-OGF defining property
        let m = to_matrix(&a, n).map_err(|e| e.to_string())?;
        for j in 0..n {
            let ogf = a
                .mu()
                .mul(&a.sigma().pow(j).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            for i in 0..n {
                ensure!(
                    m.entry(i, j) == ogf.coeff(i).map_err(|e| e.to_string())?,
                    "trial {trial}: column OGF violated at ({i},{j}) for a = {a}"
                );
            }
        }
        ensure!(
            m.is_lower_triangular_unit_diagonal(),
            "trial {trial}: matrix of group element not unit lower triangular, a = {a}"
        );

        // the ⋊ ↔ matrix correspondence order is stable
        let order = rtimes_matrix_check(&a, &b, n).map_err(|e| e.to_string())?;
        match order {
            Correspondence::Both => {}
            Correspondence::Neither => {
                return Err(format!(
                    "trial {trial}: neither product order matched for a = {a}, b = {b}"
                ));
            }
            found => match seen {
                None => seen = Some(found),
                Some(prev) => ensure!(
                    prev == found,
                    "trial {trial}: correspondence order flipped from {prev:?} to {found:?}"
                ),
            },
        }

        // EGF identity at N <= 6
        let egf_n = n.min(6);
        ensure!(
            egf_identity_check(&a, egf_n).map_err(|e| e.to_string())?,
            "trial {trial}: EGF identity failed for a = {a}"
        );
    }
    // regression constant: matrix multiplication reverses ⋊
    if let Some(order) = seen {
        ensure!(
            order == Correspondence::AntiHomomorphism,
            "correspondence order changed: expected AntiHomomorphism, found {order:?}"
        );
    }
    Ok(())
}

fn suite_truncation(cfg: &CheckConfig) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let big = cfg.precision.max(4);
    let small = (big / 2).max(2);

    // series-level operations
    type SeriesOp = (
        &'static str,
        fn(&Series, &Series) -> crate::error::Result<Series>,
    );
    let binary_ops: &[SeriesOp] = &[
        ("add", |f, g| f.add(g)),
        ("mul", |f, g| f.mul(g)),
        ("sub", |f, g| f.sub(g)),
    ];

    for trial in 0..cfg.trials {
        let f_big = series(&mut rng, big);
        let g_big = series(&mut rng, big);
        let s_big = sigma(&mut rng, big);
        let f_small = f_big.truncate(small).map_err(|e| e.to_string())?;
        let g_small = g_big.truncate(small).map_err(|e| e.to_string())?;
        let s_small = s_big.truncate(small).map_err(|e| e.to_string())?;

        for (name, op) in binary_ops {
            let truncated = op(&f_big, &g_big)
                .and_then(|r| r.truncate(small))
                .map_err(|e| e.to_string())?;
            let direct = op(&f_small, &g_small).map_err(|e| e.to_string())?;
            ensure!(
                truncated == direct,
                "trial {trial}: {name} not truncation stable for f = {f_big}, g = {g_big}"
            );
        }

        let truncated = f_big
            .substitute(&s_big)
            .and_then(|r| r.truncate(small))
            .map_err(|e| e.to_string())?;
        let direct = f_small.substitute(&s_small).map_err(|e| e.to_string())?;
        ensure!(
            truncated == direct,
            "trial {trial}: substitute not truncation stable for f = {f_big}, s = {s_big}"
        );

        let k = rng.gen_range(0..4usize);
        let truncated = s_big
            .comp_power(k)
            .and_then(|r| r.truncate(small))
            .map_err(|e| e.to_string())?;
        let direct = s_small.comp_power(k).map_err(|e| e.to_string())?;
        ensure!(truncated == direct, "trial {trial}: comp_power not truncation stable");

        let u_big = unit_series(&mut rng, big);
        let u_small = u_big.truncate(small).map_err(|e| e.to_string())?;
        let truncated = u_big
            .mul_inverse()
            .and_then(|r| r.truncate(small))
            .map_err(|e| e.to_string())?;
        ensure!(
            truncated == u_small.mul_inverse().map_err(|e| e.to_string())?,
            "trial {trial}: mul_inverse not truncation stable for u = {u_big}"
        );

        // compositionally invertible sigma
        let mut rev = s_big.coeffs().to_vec();
        rev[1] = nonzero_rational(&mut rng);
        let rev_big = Series::from_coeffs(rev).map_err(|e| e.to_string())?;
        let rev_small = rev_big.truncate(small).map_err(|e| e.to_string())?;
        let truncated = rev_big
            .comp_inverse()
            .and_then(|r| r.truncate(small))
            .map_err(|e| e.to_string())?;
        ensure!(
            truncated == rev_small.comp_inverse().map_err(|e| e.to_string())?,
            "trial {trial}: comp_inverse not truncation stable for s = {rev_big}"
        );

        let truncated = s_big
            .exp_series()
            .and_then(|r| r.truncate(small))
            .map_err(|e| e.to_string())?;
        ensure!(
            truncated == s_small.exp_series().map_err(|e| e.to_string())?,
            "trial {trial}: exp not truncation stable"
        );

        let mut logarg = s_big.coeffs().to_vec();
        logarg[0] = Rational::from_int(1);
        let log_big = Series::from_coeffs(logarg).map_err(|e| e.to_string())?;
        let log_small = log_big.truncate(small).map_err(|e| e.to_string())?;
        let truncated = log_big
            .log_series()
            .and_then(|r| r.truncate(small))
            .map_err(|e| e.to_string())?;
        ensure!(
            truncated == log_small.log_series().map_err(|e| e.to_string())?,
            "trial {trial}: log not truncation stable"
        );

        // pair-level operations
        let a_big = pair(&mut rng, big);
        let b_big = pair(&mut rng, big);
        let a_small = a_big.truncate(small).map_err(|e| e.to_string())?;
        let b_small = b_big.truncate(small).map_err(|e| e.to_string())?;
        let truncated = a_big
            .rtimes(&b_big)
            .and_then(|r| r.truncate(small))
            .map_err(|e| e.to_string())?;
        ensure!(
            truncated == a_small.rtimes(&b_small).map_err(|e| e.to_string())?,
            "trial {trial}: rtimes not truncation stable for a = {a_big}, b = {b_big}"
        );
        let truncated = a_big
            .rtimes_power(3)
            .and_then(|r| r.truncate(small))
            .map_err(|e| e.to_string())?;
        ensure!(
            truncated == a_small.rtimes_power(3).map_err(|e| e.to_string())?,
            "trial {trial}: rtimes_power not truncation stable for a = {a_big}"
        );

        let g_big_el = group_element(&mut rng, big);
        let g_small_el = g_big_el.truncate(small).map_err(|e| e.to_string())?;
        let truncated = g_big_el
            .group_inverse()
            .and_then(|r| r.truncate(small))
            .map_err(|e| e.to_string())?;
        ensure!(
            truncated == g_small_el.group_inverse().map_err(|e| e.to_string())?,
            "trial {trial}: group_inverse not truncation stable for a = {g_big_el}"
        );

        let lambda = small_lambda(&mut rng);
        let truncated = rtimes_binomial_power(&g_big_el, &lambda)
            .and_then(|r| r.truncate(small))
            .map_err(|e| e.to_string())?;
        ensure!(
            truncated == rtimes_binomial_power(&g_small_el, &lambda).map_err(|e| e.to_string())?,
            "trial {trial}: binomial power not truncation stable for a = {g_big_el}"
        );

        // phi over an ideal base
        let base_big = ideal_element(&mut rng, big);
        let base_small = base_big.truncate(small).map_err(|e| e.to_string())?;
        let truncated = phi_apply(&base_big, &f_big)
            .and_then(|r| r.truncate(small))
            .map_err(|e| e.to_string())?;
        ensure!(
            truncated == phi_apply(&base_small, &f_small).map_err(|e| e.to_string())?,
            "trial {trial}: phi not truncation stable at base = {base_big}"
        );

        // star arithmetic through the representation
        let u = CauchyElement::from_series(&base_big, {
            let mut rep = f_big.coeffs().to_vec();
            rep[0] = Rational::from_int(1);
            Series::from_coeffs(rep).map_err(|e| e.to_string())?
        })
        .map_err(|e| e.to_string())?;
        let u_small = CauchyElement::from_series(
            &base_small,
            u.rep().truncate(small).map_err(|e| e.to_string())?,
        )
        .map_err(|e| e.to_string())?;
        let truncated = u
            .star_generalized_power(&lambda)
            .map_err(|e| e.to_string())?
            .rep()
            .truncate(small)
            .map_err(|e| e.to_string())?;
        ensure!(
            &truncated
                == u_small
                    .star_generalized_power(&lambda)
                    .map_err(|e| e.to_string())?
                    .rep(),
            "trial {trial}: star generalized power not truncation stable"
        );

        // matrices: build at the small order from both precisions
        let m_big = to_matrix(&g_big_el, small).map_err(|e| e.to_string())?;
        let m_small = to_matrix(&g_small_el, small).map_err(|e| e.to_string())?;
        ensure!(
            m_big == m_small,
            "trial {trial}: to_matrix not truncation stable for a = {g_big_el}"
        );

        // binomial coefficient stream is precision-free but keep the counter
        // honest: C(lambda, 0) = 1
        ensure!(
            binomial(&lambda, 0) == Rational::from_int(1),
            "binomial(lambda, 0) != 1"
        );
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_suites_pass_smoke() {
        let cfg = CheckConfig {
            seed: 0,
            trials: 8,
            precision: 8,
        };
        for name in SUITE_NAMES {
            run_suite(name, &cfg).unwrap_or_else(|f| panic!("{f}"));
        }
    }

    #[test]
    fn unknown_suite_rejected() {
        assert!(run_suite("nope", &CheckConfig::default()).is_err());
    }
}
