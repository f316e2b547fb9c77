//! Axiom suites: named lists of identities, order conditions and adjunctions
//! checked exhaustively on a finite algebra.

use std::fmt;

use finite_algebra::{
    check_identity_with, for_each_tuple, induced_order, FiniteAlgebra, IdentityOutcome, Limits,
    Order,
};
use term_core::parse_term;

use crate::CatalogError;

/// Which half of an adjunction between `op` and `residual` is meant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `op(a,b) ≤ c ⟺ b ≤ residual(a,c)`
    Left,
    /// `op(a,b) ≤ c ⟺ a ≤ residual(c,b)`
    Right,
    /// `c ≤ op(a,b) ⟺ residual(a,c) ≤ b`
    Dual,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomKind {
    /// Term texts over the algebra's signature.
    Identity { lhs: String, rhs: String },
    /// `op` is monotone (or antitone when `reversing`) for the order induced by
    /// the meet symbol `order`, in every argument or only at `position` (1-based).
    Monotone { op: String, order: String, position: Option<usize>, reversing: bool },
    Adjoint { op: String, residual: String, order: String, side: Side },
    /// Unary operations `f` and `g` commute.
    Commute { f: String, g: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Axiom {
    pub id: String,
    pub kind: AxiomKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomSuite {
    pub key: String,
    pub description: String,
    pub axioms: Vec<Axiom>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomOutcome {
    Pass,
    /// A rendered counterexample, with element labels where available.
    Fail(String),
    /// The check exceeded its evaluation budget.
    Unknown(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomResult {
    pub id: String,
    pub outcome: AxiomOutcome,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: String,
    pub algebra: String,
    pub results: Vec<AxiomResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.outcome == AxiomOutcome::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomResult> {
        self.results.iter().filter(|r| matches!(r.outcome, AxiomOutcome::Fail(_)))
    }

    pub fn has_unknown(&self) -> bool {
        self.results.iter().any(|r| matches!(r.outcome, AxiomOutcome::Unknown(_)))
    }
}

impl fmt::Display for AxiomKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomKind::Identity { lhs, rhs } => write!(f, "{lhs} = {rhs}"),
            AxiomKind::Monotone { op, order, position, reversing } => {
                let dir = if *reversing { "antitone" } else { "monotone" };
                match position {
                    Some(p) => write!(f, "{op} {dir} in argument {p} w.r.t. {order}"),
                    None => write!(f, "{op} {dir} w.r.t. {order}"),
                }
            }
            AxiomKind::Adjoint { op, residual, order, side } => match side {
                Side::Left => write!(f, "{op}(a,b) <= c iff b <= {residual}(a,c) w.r.t. {order}"),
                Side::Right => write!(f, "{op}(a,b) <= c iff a <= {residual}(c,b) w.r.t. {order}"),
                Side::Dual => write!(f, "c <= {op}(a,b) iff {residual}(a,c) <= b w.r.t. {order}"),
            },
            AxiomKind::Commute { f: a, g } => write!(f, "({a} ({g} x1)) = ({g} ({a} x1))"),
        }
    }
}

/// Assignments allowed per identity; 256 elements with three variables need 2^24.
pub const DEFAULT_EVAL_CAP: usize = 1 << 25;

pub fn check_suite(alg: &FiniteAlgebra, suite: &AxiomSuite) -> Result<SuiteReport, CatalogError> {
    check_suite_with(alg, suite, DEFAULT_EVAL_CAP)
}

/// Checks every axiom exhaustively; a missing symbol is an error, an exceeded
/// `eval_cap` makes that axiom unknown.
pub fn check_suite_with(
    alg: &FiniteAlgebra,
    suite: &AxiomSuite,
    eval_cap: usize,
) -> Result<SuiteReport, CatalogError> {
    let limits = Limits { eval_cap, ..Limits::default() };
    let mut results = Vec::with_capacity(suite.axioms.len());
    for axiom in &suite.axioms {
        let outcome = check_axiom(alg, &axiom.kind, &limits)?;
        results.push(AxiomResult { id: axiom.id.clone(), outcome });
    }
    Ok(SuiteReport { suite: suite.key.clone(), algebra: alg.name().to_string(), results })
}

fn labels(alg: &FiniteAlgebra, elems: &[usize]) -> String {
    elems.iter().map(|&e| alg.label(e)).collect::<Vec<_>>().join(", ")
}

fn check_axiom(
    alg: &FiniteAlgebra,
    kind: &AxiomKind,
    limits: &Limits,
) -> Result<AxiomOutcome, CatalogError> {
    match kind {
        AxiomKind::Identity { lhs, rhs } => check_equation(alg, lhs, rhs, limits),
        AxiomKind::Commute { f, g } => {
            check_equation(alg, &format!("({f} ({g} x1))"), &format!("({g} ({f} x1))"), limits)
        }
        AxiomKind::Monotone { op, order, position, reversing } => {
            let ord = induced_order(alg, order)?;
            Ok(check_monotone(alg, op, &ord, *position, *reversing)?)
        }
        AxiomKind::Adjoint { op, residual, order, side } => {
            let ord = induced_order(alg, order)?;
            check_adjoint(alg, op, residual, &ord, *side, limits)
        }
    }
}

fn check_equation(
    alg: &FiniteAlgebra,
    lhs: &str,
    rhs: &str,
    limits: &Limits,
) -> Result<AxiomOutcome, CatalogError> {
    let l = parse_term(lhs, alg.sig())?;
    let r = parse_term(rhs, alg.sig())?;
    match check_identity_with(alg, &l, &r, limits) {
        Ok(IdentityOutcome::Pass) => Ok(AxiomOutcome::Pass),
        Ok(IdentityOutcome::Counterexample(asg)) => {
            let vars: Vec<String> = asg
                .iter()
                .enumerate()
                .map(|(i, &e)| format!("x{}={}", i + 1, alg.label(e)))
                .collect();
            Ok(AxiomOutcome::Fail(vars.join(", ")))
        }
        Err(finite_algebra::AlgebraError::Resource { what, limit }) => {
            Ok(AxiomOutcome::Unknown(format!("{what} exceeds {limit}")))
        }
        Err(e) => Err(e.into()),
    }
}

fn check_monotone(
    alg: &FiniteAlgebra,
    op: &str,
    order: &Order,
    position: Option<usize>,
    reversing: bool,
) -> Result<AxiomOutcome, CatalogError> {
    let idx = alg.op_index(op)?;
    let arity = alg.arity_at(idx);
    let n = alg.size();
    let mut above: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (lo, hi) in order.covers() {
        above[lo].push(hi);
    }
    let positions: Vec<usize> = match position {
        Some(p) if p == 0 || p > arity => {
            return Err(CatalogError::Invalid(format!("`{op}` has no argument {p}")))
        }
        Some(p) => vec![p - 1],
        None => (0..arity).collect(),
    };
    let mut failure = None;
    let mut raised = vec![0; arity];
    for_each_tuple(n, arity, |args| {
        if failure.is_some() {
            return;
        }
        let base = alg.apply(idx, args);
        for &p in &positions {
            raised.copy_from_slice(args);
            for &hi in &above[args[p]] {
                raised[p] = hi;
                let value = alg.apply(idx, &raised);
                let ok = if reversing { order.leq(value, base) } else { order.leq(base, value) };
                if !ok {
                    failure = Some(format!(
                        "{op}({}) vs argument {} raised to {}",
                        labels(alg, args),
                        p + 1,
                        alg.label(hi)
                    ));
                    return;
                }
            }
        }
    });
    Ok(failure.map_or(AxiomOutcome::Pass, AxiomOutcome::Fail))
}

fn check_adjoint(
    alg: &FiniteAlgebra,
    op: &str,
    residual: &str,
    order: &Order,
    side: Side,
    limits: &Limits,
) -> Result<AxiomOutcome, CatalogError> {
    let f = alg.op_index(op)?;
    let r = alg.op_index(residual)?;
    for (sym, i) in [(op, f), (residual, r)] {
        if alg.arity_at(i) != 2 {
            return Err(CatalogError::Invalid(format!("`{sym}` is not binary")));
        }
    }
    let n = alg.size();
    if n.checked_pow(3).is_none_or(|c| c > limits.eval_cap) {
        return Ok(AxiomOutcome::Unknown(format!("adjointness over {n}^3 triples")));
    }
    let mut failure = None;
    for_each_tuple(n, 3, |t| {
        if failure.is_some() {
            return;
        }
        let (a, b, c) = (t[0], t[1], t[2]);
        let (lhs, rhs) = match side {
            Side::Left => (order.leq(alg.apply(f, &[a, b]), c), order.leq(b, alg.apply(r, &[a, c]))),
            Side::Right => (order.leq(alg.apply(f, &[a, b]), c), order.leq(a, alg.apply(r, &[c, b]))),
            Side::Dual => (order.leq(c, alg.apply(f, &[a, b])), order.leq(alg.apply(r, &[a, c]), b)),
        };
        if lhs != rhs {
            failure = Some(format!("a, b, c = {}", labels(alg, t)));
        }
    });
    Ok(failure.map_or(AxiomOutcome::Pass, AxiomOutcome::Fail))
}

#[derive(Default)]
struct Builder {
    axioms: Vec<Axiom>,
}

impl Builder {
    fn push(&mut self, id: String, kind: AxiomKind) -> &mut Self {
        self.axioms.push(Axiom { id, kind });
        self
    }

    fn eq(&mut self, id: impl Into<String>, lhs: impl Into<String>, rhs: impl Into<String>) -> &mut Self {
        self.push(id.into(), AxiomKind::Identity { lhs: lhs.into(), rhs: rhs.into() })
    }

    fn mono(&mut self, id: impl Into<String>, op: &str, order: &str, reversing: bool) -> &mut Self {
        let kind = AxiomKind::Monotone {
            op: op.into(),
            order: order.into(),
            position: None,
            reversing,
        };
        self.push(id.into(), kind)
    }

    fn mono_at(&mut self, op: &str, order: &str, position: usize, reversing: bool) -> &mut Self {
        let dir = if reversing { "antitone" } else { "monotone" };
        let kind = AxiomKind::Monotone {
            op: op.into(),
            order: order.into(),
            position: Some(position),
            reversing,
        };
        self.push(format!("{op}/{dir}-{position}"), kind)
    }

    fn adjoint(&mut self, op: &str, residual: &str, order: &str, side: Side) -> &mut Self {
        let kind = AxiomKind::Adjoint {
            op: op.into(),
            residual: residual.into(),
            order: order.into(),
            side,
        };
        self.push(format!("{residual}/adjoint-of-{op}"), kind)
    }

    fn commute(&mut self, f: &str, g: &str) -> &mut Self {
        self.push(format!("{f}/commutes-{g}"), AxiomKind::Commute { f: f.into(), g: g.into() })
    }

    /// Commutativity, associativity and absorption for one join/meet pair.
    fn lattice(&mut self, prefix: &str, join: &str, meet: &str) -> &mut Self {
        for (a, b) in [(join, meet), (meet, join)] {
            self.eq(format!("{prefix}{a}/commutative"), format!("({a} x1 x2)"), format!("({a} x2 x1)"));
            self.eq(
                format!("{prefix}{a}/associative"),
                format!("({a} x1 ({a} x2 x3))"),
                format!("({a} ({a} x1 x2) x3)"),
            );
            self.eq(format!("{prefix}{a}/absorption"), format!("({a} x1 ({b} x1 x2))"), "x1");
        }
        self
    }

    /// `outer` distributes over `inner` from the left.
    fn distributes(&mut self, outer: &str, inner: &str) -> &mut Self {
        self.eq(
            format!("{outer}/distributes-over-{inner}"),
            format!("({outer} x1 ({inner} x2 x3))"),
            format!("({inner} ({outer} x1 x2) ({outer} x1 x3))"),
        )
    }

    fn all_distribute(&mut self, ops: &[&str]) -> &mut Self {
        for &a in ops {
            for &b in ops {
                if a != b {
                    self.distributes(a, b);
                }
            }
        }
        self
    }

    fn bounds(&mut self, join: &str, meet: &str, bottom: &str, top: &str) -> &mut Self {
        self.eq(format!("{bottom}/least"), format!("({meet} x1 {bottom})"), bottom)
            .eq(format!("{top}/greatest"), format!("({join} x1 {top})"), top)
    }

    fn involution(&mut self, op: &str) -> &mut Self {
        self.eq(format!("{op}/involution"), format!("({op} ({op} x1))"), "x1")
    }

    fn extend(&mut self, key: &str) -> &mut Self {
        let base = suite(key).expect("nested suite keys are catalog keys");
        self.axioms.extend(base.axioms);
        self
    }

    fn distributive_lattice(&mut self, join: &str, meet: &str) -> &mut Self {
        self.lattice("", join, meet).distributes(meet, join).distributes(join, meet)
    }

    /// Laws of an implication-like arrow `(a₁→b₁, a₁∧b₂)` on bilattices.
    fn arrow(&mut self, imp: &str) -> &mut Self {
        self.eq(
            format!("{imp}/exportation"),
            format!("({imp} x1 ({imp} x2 x3))"),
            format!("({imp} (tmeet x1 x2) x3)"),
        )
        .eq(
            format!("{imp}/distributes-over-kmeet"),
            format!("({imp} x1 (kmeet x2 x3))"),
            format!("(kmeet ({imp} x1 x2) ({imp} x1 x3))"),
        )
    }

    /// Involution reversing the `v` order and preserving the others.
    fn v_involution(&mut self, op: &str, v: char, orders: &[char]) -> &mut Self {
        self.involution(op);
        for &w in orders {
            let reversing = w == v;
            let dir = if reversing { "reverses" } else { "preserves" };
            self.mono(format!("{op}/{dir}-{w}"), op, &format!("{w}meet"), reversing);
        }
        self
    }
}

/// `(key, description)` for every suite.
pub(crate) const SUITES: &[(&str, &str)] = &[
    ("lattice", "commutativity, associativity and absorption of join and meet"),
    ("distributive-lattice", "lattice laws with both distributivities"),
    ("bounded-lattice", "lattice laws with zero and one"),
    ("bounded-distributive-lattice", "distributive lattice with zero and one"),
    ("de-morgan-lattice", "distributive lattice with an order-reversing involution inv"),
    ("de-morgan", "bounded De Morgan algebra"),
    ("boolean", "bounded distributive lattice with complement compl"),
    ("generalised-boolean", "Brouwerian lattice satisfying Peirce's law"),
    ("heyting", "bounded distributive lattice with impl residuating meet"),
    ("brouwerian", "distributive lattice with impl residuating meet"),
    ("bi-heyting", "Heyting algebra with coimpl dually residuating join"),
    ("residuated-lattice", "lattice with associative mul residuated by ldiv and rdiv"),
    ("bimodal", "Boolean algebra with two normal boxes boxp and boxm"),
    ("bilattice", "truth and knowledge lattices with a negation"),
    ("bounded-bilattice", "bilattice with the four bounds t0, t1, k0, k1"),
    ("distributive-bilattice", "bilattice in which each lattice operation distributes over the other three"),
    ("bounded-distributive-bilattice", "distributive bilattice with the four bounds"),
    ("interlaced-pre-bilattice", "two lattices, each operation monotone in both orders"),
    ("conflation", "distributive bilattice with a conflation conf"),
    ("bounded-conflation", "bounded distributive bilattice with a conflation conf"),
    ("bilattice-k-implication", "bounded distributive bilattice with kimpl residuating kmeet"),
    ("bilattice-t-implication", "bounded distributive bilattice with timpl residuating tmeet"),
    ("brouwerian-bilattice", "distributive bilattice with a weak knowledge implication kimpl"),
    ("bounded-brouwerian-bilattice", "bounded distributive bilattice with a weak knowledge implication kimpl"),
    ("guard-bilattice", "bounded distributive bilattice with a guard operation"),
    ("slash-bilattice", "bounded distributive bilattice with negation by failure slash"),
    ("implicative-bilattice", "bounded distributive bilattice with the implication imp"),
    ("implicative-bilattice-u", "distributive bilattice with the implication imp"),
    ("moore-bilattice", "bounded distributive bilattice with the epistemic operator know"),
    ("residuated-bilattice", "bilattice with ldiv and rdiv of the right monotonicity"),
    ("modal-bilattice", "implicative bilattice with a box satisfying the three modal equations"),
    ("distributive-trilattice", "three lattices, each operation distributing over the other five"),
    ("interlaced-trilattice", "three lattices, each operation monotone in all three orders"),
    ("trilattice-t", "three lattices with a t-involution"),
    ("distributive-trilattice-t", "distributive trilattice with a t-involution"),
    ("interlaced-trilattice-t", "interlaced trilattice with a t-involution"),
    ("trilattice-tf", "three lattices with commuting t- and f-involutions"),
    ("trilattice-tfi", "three lattices with commuting t-, f- and i-involutions"),
];

pub fn suite(key: &str) -> Option<AxiomSuite> {
    let (key, description) = SUITES.iter().find(|(k, _)| *k == key)?;
    let mut b = Builder::default();
    match *key {
        "lattice" => b.lattice("", "join", "meet"),
        "distributive-lattice" => b.distributive_lattice("join", "meet"),
        "bounded-lattice" => b.extend("lattice").bounds("join", "meet", "zero", "one"),
        "bounded-distributive-lattice" => {
            b.extend("distributive-lattice").bounds("join", "meet", "zero", "one")
        }
        "de-morgan-lattice" => b
            .extend("distributive-lattice")
            .involution("inv")
            .eq("inv/de-morgan", "(inv (join x1 x2))", "(meet (inv x1) (inv x2))"),
        "de-morgan" => b
            .extend("de-morgan-lattice")
            .bounds("join", "meet", "zero", "one")
            .eq("inv/zero", "(inv zero)", "one"),
        "boolean" => b
            .extend("bounded-distributive-lattice")
            .eq("compl/meet", "(meet x1 (compl x1))", "zero")
            .eq("compl/join", "(join x1 (compl x1))", "one"),
        "heyting" => b.extend("bounded-distributive-lattice").adjoint("meet", "impl", "meet", Side::Left),
        "brouwerian" => b.extend("distributive-lattice").adjoint("meet", "impl", "meet", Side::Left),
        "generalised-boolean" => b.extend("brouwerian").eq(
            "impl/peirce",
            "(join (impl (impl x1 x2) x1) x1)",
            "x1",
        ),
        "bi-heyting" => b.extend("heyting").adjoint("join", "coimpl", "meet", Side::Dual),
        "residuated-lattice" => b
            .extend("lattice")
            .eq("mul/associative", "(mul x1 (mul x2 x3))", "(mul (mul x1 x2) x3)")
            .adjoint("mul", "ldiv", "meet", Side::Left)
            .adjoint("mul", "rdiv", "meet", Side::Right),
        "bimodal" => {
            b.extend("boolean");
            for op in ["boxp", "boxm"] {
                b.eq(format!("{op}/top"), format!("({op} one)"), "one").eq(
                    format!("{op}/meet"),
                    format!("({op} (meet x1 x2))"),
                    format!("(meet ({op} x1) ({op} x2))"),
                );
            }
            &mut b
        }
        "bilattice" => b
            .lattice("t/", "tjoin", "tmeet")
            .lattice("k/", "kjoin", "kmeet")
            .involution("neg")
            .eq("neg/reverses-t", "(neg (tjoin x1 x2))", "(tmeet (neg x1) (neg x2))")
            .eq("neg/preserves-kjoin", "(neg (kjoin x1 x2))", "(kjoin (neg x1) (neg x2))")
            .eq("neg/preserves-kmeet", "(neg (kmeet x1 x2))", "(kmeet (neg x1) (neg x2))"),
        "bounded-bilattice" => b
            .extend("bilattice")
            .bounds("tjoin", "tmeet", "t0", "t1")
            .bounds("kjoin", "kmeet", "k0", "k1"),
        "distributive-bilattice" => {
            b.extend("bilattice").all_distribute(&["tjoin", "tmeet", "kjoin", "kmeet"])
        }
        "bounded-distributive-bilattice" => b
            .extend("distributive-bilattice")
            .bounds("tjoin", "tmeet", "t0", "t1")
            .bounds("kjoin", "kmeet", "k0", "k1"),
        "interlaced-pre-bilattice" => {
            b.lattice("t/", "tjoin", "tmeet").lattice("k/", "kjoin", "kmeet");
            for op in ["tjoin", "tmeet", "kjoin", "kmeet"] {
                for o in ['t', 'k'] {
                    b.mono(format!("{op}/monotone-{o}"), op, &format!("{o}meet"), false);
                }
            }
            &mut b
        }
        "conflation" | "bounded-conflation" => {
            let base = if *key == "conflation" {
                "distributive-bilattice"
            } else {
                "bounded-distributive-bilattice"
            };
            b.extend(base)
                .involution("conf")
                .mono("conf/preserves-t", "conf", "tmeet", false)
                .mono("conf/reverses-k", "conf", "kmeet", true)
                .commute("conf", "neg")
        }
        "bilattice-k-implication" => b
            .extend("bounded-distributive-bilattice")
            .adjoint("kmeet", "kimpl", "kmeet", Side::Left),
        "bilattice-t-implication" => b
            .extend("bounded-distributive-bilattice")
            .adjoint("tmeet", "timpl", "tmeet", Side::Left),
        "brouwerian-bilattice" => b.extend("distributive-bilattice").arrow("kimpl"),
        "bounded-brouwerian-bilattice" => b
            .extend("bounded-distributive-bilattice")
            .arrow("kimpl")
            .eq("kimpl/t1", "(kimpl t1 x1)", "x1"),
        "guard-bilattice" => b
            .extend("bounded-distributive-bilattice")
            .eq("guard/t1", "(guard t1 x1)", "x1")
            .eq("guard/t0", "(guard t0 x1)", "k0")
            .eq("guard/neg", "(guard x1 (neg x2))", "(neg (guard x1 x2))")
            .eq("guard/kjoin", "(guard x1 (kjoin x2 x3))", "(kjoin (guard x1 x2) (guard x1 x3))")
            .eq("guard/nesting", "(guard x1 (guard x2 x3))", "(guard (tmeet x1 x2) x3)"),
        "slash-bilattice" => b
            .extend("bounded-distributive-bilattice")
            .involution("slash")
            .eq("slash/tjoin", "(slash (tjoin x1 x2))", "(kmeet (slash x1) (slash x2))")
            .eq("slash/tmeet", "(slash (tmeet x1 x2))", "(kjoin (slash x1) (slash x2))")
            .eq("slash/t1", "(slash t1)", "k0")
            .eq("slash/t0", "(slash t0)", "k1"),
        "implicative-bilattice" => b
            .extend("bounded-distributive-bilattice")
            .arrow("imp")
            .eq("imp/t1", "(imp t1 x1)", "x1")
            .eq("imp/t0", "(imp t0 x1)", "t1"),
        "implicative-bilattice-u" => b.extend("distributive-bilattice").arrow("imp"),
        "moore-bilattice" => b
            .extend("bounded-distributive-bilattice")
            .eq("know/idempotent", "(know (know x1))", "(know x1)")
            .eq("know/tmeet", "(know (tmeet x1 x2))", "(tmeet (know x1) (know x2))")
            .eq("know/t1", "(know t1)", "t1"),
        "residuated-bilattice" => b
            .extend("bilattice")
            .mono_at("ldiv", "tmeet", 1, true)
            .mono_at("ldiv", "tmeet", 2, false)
            .mono_at("rdiv", "tmeet", 1, false)
            .mono_at("rdiv", "tmeet", 2, true),
        "modal-bilattice" => b
            .extend("implicative-bilattice")
            .eq("box/t1", "(box t1)", "t1")
            .eq("box/tmeet", "(box (tmeet x1 x2))", "(tmeet (box x1) (box x2))")
            .eq("box/k0-imp", "(box (imp k0 x1))", "(imp k0 (box x1))"),
        "distributive-trilattice" => b
            .lattice("t/", "tjoin", "tmeet")
            .lattice("f/", "fjoin", "fmeet")
            .lattice("i/", "ijoin", "imeet")
            .all_distribute(&["tjoin", "tmeet", "fjoin", "fmeet", "ijoin", "imeet"]),
        "distributive-trilattice-t" => {
            b.extend("distributive-trilattice").v_involution("tinv", 't', &['t', 'f', 'i'])
        }
        "interlaced-trilattice" | "interlaced-trilattice-t" => {
            b.lattice("t/", "tjoin", "tmeet").lattice("f/", "fjoin", "fmeet").lattice(
                "i/",
                "ijoin",
                "imeet",
            );
            for op in ["tjoin", "tmeet", "fjoin", "fmeet", "ijoin", "imeet"] {
                for o in ['t', 'f', 'i'] {
                    b.mono(format!("{op}/monotone-{o}"), op, &format!("{o}meet"), false);
                }
            }
            if *key == "interlaced-trilattice-t" {
                b.v_involution("tinv", 't', &['t', 'f', 'i']);
            }
            &mut b
        }
        "trilattice-t" | "trilattice-tf" | "trilattice-tfi" => {
            b.lattice("t/", "tjoin", "tmeet").lattice("f/", "fjoin", "fmeet").lattice(
                "i/",
                "ijoin",
                "imeet",
            );
            let vs: Vec<char> = key["trilattice-".len()..].chars().collect();
            for &v in &vs {
                b.v_involution(&format!("{v}inv"), v, &['t', 'f', 'i']);
            }
            for (i, &v) in vs.iter().enumerate() {
                for &w in &vs[i + 1..] {
                    b.commute(&format!("{v}inv"), &format!("{w}inv"));
                }
            }
            &mut b
        }
        _ => unreachable!("every listed suite has a definition"),
    };
    Some(AxiomSuite {
        key: key.to_string(),
        description: description.to_string(),
        axioms: b.axioms,
    })
}
