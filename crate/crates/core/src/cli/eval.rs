//! Evaluation of parsed scripts.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use super::ast::{BinOp, Expr, ExprKind, RingDef, Script, Span, Stmt, StmtKind};
use super::parser::{parse, ParseError};
use crate::binomial::{
    binomial_saturated, binomial_symbolic, check_ass_structure, check_binomial_saturated, check_binomial_symbolic,
    check_equality_criteria, check_filtration_identities, check_saturated_inclusion,
    check_symbolic_equality_criteria, join_rings, Filtration, JoinedRing, Outcome, RingEmbedding,
};
use crate::decomposition::{
    ass_module_quotient, ass_star_bounded, associated_primes, default_ass_star_bound, grade_zero,
    irreducible_decomposition, minimal_primes, primary_decomposition, AssStar, IrreducibleComponent,
    PrimaryDecomposition,
};
use crate::homology::{
    betti_table, check_depth_reg_binomial, check_depth_reg_symbolic, check_deriv_star, deriv_star, BettiTable,
    Characteristic, ExtendedInt,
};
use crate::monomial::{Monomial, MonomialIdeal, MonomialPrime, Ring};
use crate::powers::{
    check_symbolic_routes, regular_witness, saturated_power, saturator, saturator_global, symbolic_power,
    GlobalSaturator, Notion,
};

/// Kernel operations the evaluator dispatches through, so tests can swap
/// one out and confirm the golden checks notice.
#[derive(Clone, Copy)]
pub struct Kernel {
    pub intersect: fn(&MonomialIdeal, &MonomialIdeal) -> crate::Result<MonomialIdeal>,
}

impl Default for Kernel {
    fn default() -> Kernel {
        Kernel { intersect: MonomialIdeal::intersect }
    }
}

impl fmt::Debug for Kernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Kernel")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{span}: {message}")]
pub struct EvalError {
    pub span: Span,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScriptError {
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error("error at {0}")]
    Eval(#[from] EvalError),
}

/// A filtration described by its generator, built to the needed length on use.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiltrationKind {
    Powers(MonomialIdeal),
    Saturated(MonomialIdeal, MonomialIdeal),
    Symbolic(MonomialIdeal, Notion),
}

impl FiltrationKind {
    fn ring(&self) -> &Ring {
        match self {
            FiltrationKind::Powers(i) | FiltrationKind::Saturated(i, _) | FiltrationKind::Symbolic(i, _) => i.ring(),
        }
    }

    fn build(&self, top: u32) -> crate::Result<Filtration> {
        match self {
            FiltrationKind::Powers(i) => Filtration::ordinary_powers(i, top),
            FiltrationKind::Saturated(i, k) => Filtration::saturated_powers(i, k, top),
            FiltrationKind::Symbolic(i, n) => Filtration::symbolic_powers(i, top, *n),
        }
    }
}

#[derive(Clone, Debug)]
pub enum Value {
    Ideal(MonomialIdeal),
    Int(u64),
    Extended(ExtendedInt),
    Bool(bool),
    Primes(BTreeSet<MonomialPrime>),
    AssStar(AssStar),
    Components(Vec<IrreducibleComponent>),
    Primary(PrimaryDecomposition),
    Betti(BettiTable),
    Witness(Option<Monomial>),
    Saturator(GlobalSaturator),
    Ring(Ring),
    Filtration(FiltrationKind),
    Report { json: String, outcome: Outcome },
}

fn render_primes(ps: &BTreeSet<MonomialPrime>) -> String {
    let parts: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Ideal(i) => write!(f, "{i}"),
            Value::Int(n) => write!(f, "{n}"),
            Value::Extended(n) => write!(f, "{n}"),
            Value::Bool(b) => write!(f, "{b}"),
            Value::Primes(ps) => f.write_str(&render_primes(ps)),
            Value::AssStar(a) => write!(f, "({}, {})", render_primes(&a.primes), a.stabilized),
            Value::Components(cs) => {
                let parts: Vec<String> = cs.iter().map(|c| c.to_string()).collect();
                write!(f, "[{}]", parts.join(", "))
            }
            Value::Primary(p) => write!(f, "{p}"),
            Value::Betti(t) => write!(f, "{t}"),
            Value::Witness(Some(m)) => write!(f, "{m}"),
            Value::Witness(None) => f.write_str("none"),
            Value::Saturator(g) => write!(f, "({}, {})", g.ideal, g.stabilized),
            Value::Ring(r) => write!(f, "{r}"),
            Value::Filtration(FiltrationKind::Powers(i)) => write!(f, "powers({i})"),
            Value::Filtration(FiltrationKind::Saturated(i, k)) => write!(f, "satpowers({i}, {k})"),
            Value::Filtration(FiltrationKind::Symbolic(i, n)) => write!(f, "symbpowers({i}, {n})"),
            Value::Report { json, .. } => f.write_str(json),
        }
    }
}

/// An `assert` whose value was not true.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssertFailure {
    pub span: Span,
    pub statement: String,
    pub value: String,
}

impl fmt::Display for AssertFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: assertion failed: {} (got {})", self.span, self.statement, self.value)
    }
}

/// Output of a script run. `error` is set when evaluation stopped early.
#[derive(Clone, Debug, Default)]
pub struct RunOutcome {
    pub lines: Vec<String>,
    pub failures: Vec<AssertFailure>,
    pub error: Option<ScriptError>,
}

impl RunOutcome {
    pub fn succeeded(&self) -> bool {
        self.failures.is_empty() && self.error.is_none()
    }
}

/// Bindings and the current ring.
#[derive(Debug, Default)]
pub struct Env {
    kernel: Kernel,
    rings: HashMap<String, Ring>,
    joins: Vec<(String, JoinedRing)>,
    ideals: HashMap<String, MonomialIdeal>,
    current: Option<Ring>,
}

type EvalResult<T> = Result<T, EvalError>;

fn err<T>(span: Span, message: impl Into<String>) -> EvalResult<T> {
    Err(EvalError { span, message: message.into() })
}

fn lift<T>(span: Span, r: crate::Result<T>) -> EvalResult<T> {
    r.map_err(|e| EvalError { span, message: e.to_string() })
}

fn report<T: serde::Serialize>(value: &T, outcome: Outcome) -> Value {
    Value::Report { json: serde_json::to_string(value).expect("reports serialize"), outcome }
}

fn pass_fail(passed: bool) -> Outcome {
    if passed {
        Outcome::Pass
    } else {
        Outcome::Fail
    }
}

impl Env {
    pub fn new(kernel: Kernel) -> Env {
        Env { kernel, ..Env::default() }
    }

    pub fn run(&mut self, script: &Script) -> RunOutcome {
        let mut out = RunOutcome::default();
        for stmt in &script.statements {
            if let Err(e) = self.statement(stmt, &mut out) {
                out.error = Some(e.into());
                break;
            }
        }
        out
    }

    pub fn statement(&mut self, stmt: &Stmt, out: &mut RunOutcome) -> EvalResult<()> {
        match &stmt.kind {
            StmtKind::Ring(name, RingDef::Vars(vars)) => {
                let ring = lift(stmt.span, Ring::new(vars.iter().cloned()))?;
                self.rings.insert(name.clone(), ring.clone());
                self.current = Some(ring);
            }
            StmtKind::Ring(name, RingDef::Join(a, b)) => {
                let (ra, rb) = (self.ring_named(a, stmt.span)?, self.ring_named(b, stmt.span)?);
                let joined = join_rings(&ra, &rb);
                self.rings.insert(name.clone(), joined.ring.clone());
                self.current = Some(joined.ring.clone());
                self.joins.retain(|(n, _)| n != name);
                self.joins.push((name.clone(), joined));
            }
            StmtKind::Ideal(name, e, ring) => {
                let ctx = match ring {
                    Some(r) => Some(self.ring_named(r, stmt.span)?),
                    None => self.current.clone(),
                };
                let value = self.eval(e, ctx.as_ref())?;
                let ideal = self.to_ideal(value, ctx.as_ref(), e.span)?;
                self.ideals.insert(name.clone(), ideal);
            }
            StmtKind::Use(r) => {
                self.current = Some(self.ring_named(r, stmt.span)?);
            }
            StmtKind::Print(e) => {
                let ctx = self.current.clone();
                let v = self.eval(e, ctx.as_ref())?;
                out.lines.push(v.to_string());
            }
            StmtKind::Assert(e) => {
                let ctx = self.current.clone();
                let v = self.eval(e, ctx.as_ref())?;
                let ok = match &v {
                    Value::Bool(b) => *b,
                    Value::Report { outcome, .. } => *outcome == Outcome::Pass,
                    other => return err(e.span, format!("assert needs a boolean or a check, got {other}")),
                };
                if !ok {
                    out.failures.push(AssertFailure { span: stmt.span, statement: e.to_string(), value: v.to_string() });
                }
            }
        }
        Ok(())
    }

    fn ring_named(&self, name: &str, span: Span) -> EvalResult<Ring> {
        match self.rings.get(name) {
            Some(r) => Ok(r.clone()),
            None => err(span, format!("unknown ring `{name}`")),
        }
    }

    fn join_named(&self, name: &str, span: Span) -> EvalResult<&JoinedRing> {
        match self.joins.iter().rev().find(|(n, _)| n == name) {
            Some((_, j)) => Ok(j),
            None => err(span, format!("`{name}` is not a joined ring")),
        }
    }

    /// The most recent declared join of `a` and `b`, or a fresh one.
    fn joined_for(&self, a: &Ring, b: &Ring) -> JoinedRing {
        self.joins
            .iter()
            .rev()
            .map(|(_, j)| j)
            .find(|j| j.left.source() == a && j.right.source() == b)
            .cloned()
            .unwrap_or_else(|| join_rings(a, b))
    }

    fn to_ideal(&self, v: Value, ctx: Option<&Ring>, span: Span) -> EvalResult<MonomialIdeal> {
        match v {
            Value::Ideal(i) => Ok(i),
            Value::Witness(Some(m)) => Ok(MonomialIdeal::principal(&m)),
            Value::Int(n @ (0 | 1)) => match ctx {
                Some(r) if n == 0 => Ok(MonomialIdeal::zero(r)),
                Some(r) => Ok(MonomialIdeal::unit(r)),
                None => err(span, "no current ring for the constant ideal; declare a ring first"),
            },
            other => err(span, format!("expected an ideal, got {other}")),
        }
    }

    fn eval(&self, e: &Expr, ctx: Option<&Ring>) -> EvalResult<Value> {
        match &e.kind {
            ExprKind::Int(n) => Ok(Value::Int(*n)),
            ExprKind::Name(n) => self.name(n, ctx, e.span),
            ExprKind::List(items) => {
                let mut acc: Option<MonomialIdeal> = None;
                for it in items {
                    let ctx = acc.as_ref().map(|a| a.ring()).or(ctx);
                    let v = self.eval(it, ctx)?;
                    let i = self.to_ideal(v, ctx, it.span)?;
                    acc = Some(match acc {
                        None => i,
                        Some(a) => lift(it.span, a.sum(&i))?,
                    });
                }
                Ok(Value::Ideal(acc.expect("lists have at least two items")))
            }
            ExprKind::Binary(op, l, r) => self.binary(*op, l, r, ctx, e.span),
            ExprKind::Call(name, args) => self.call(name, args, ctx, e.span),
        }
    }

    fn name(&self, n: &str, ctx: Option<&Ring>, span: Span) -> EvalResult<Value> {
        if let Some(i) = self.ideals.get(n) {
            return Ok(Value::Ideal(i.clone()));
        }
        if let Some(r) = ctx {
            if let Some(k) = r.index_of(n) {
                return Ok(Value::Ideal(MonomialIdeal::variables(r, &[k])));
            }
        }
        if let Some(r) = self.rings.get(n) {
            return Ok(Value::Ring(r.clone()));
        }
        match ctx {
            Some(r) => err(span, format!("unbound name `{n}` (not an ideal or a variable of {r})")),
            None => err(span, format!("unbound name `{n}` (no current ring)")),
        }
    }

    fn binary(&self, op: BinOp, l: &Expr, r: &Expr, ctx: Option<&Ring>, span: Span) -> EvalResult<Value> {
        let lv = self.eval(l, ctx)?;
        // the right operand resolves variables in the left operand's ring
        let left_ring = ideal_ring(&lv);
        let rv = self.eval(r, left_ring.as_ref().or(ctx))?;
        if let (Value::Int(a), Value::Int(b)) = (&lv, &rv) {
            let (a, b) = (*a, *b);
            return Ok(match op {
                BinOp::Add => Value::Int(a.checked_add(b).ok_or_else(|| overflow(span))?),
                BinOp::Mul => Value::Int(a.checked_mul(b).ok_or_else(|| overflow(span))?),
                BinOp::Pow => Value::Int(
                    u32::try_from(b).ok().and_then(|b| a.checked_pow(b)).ok_or_else(|| overflow(span))?,
                ),
                BinOp::Eq => Value::Bool(a == b),
                BinOp::Ne => Value::Bool(a != b),
                BinOp::Le => Value::Bool(a <= b),
            });
        }
        if let (Some(a), Some(b)) = (as_extended(&lv), as_extended(&rv)) {
            match op {
                BinOp::Eq => return Ok(Value::Bool(a == b)),
                BinOp::Ne => return Ok(Value::Bool(a != b)),
                BinOp::Le => return Ok(Value::Bool(a <= b)),
                _ => {}
            }
        }
        match op {
            BinOp::Pow => {
                let base = self.to_ideal(lv, ctx, l.span)?;
                let Value::Int(s) = rv else { return err(r.span, format!("exponent must be an integer, got {rv}")) };
                let s = u32::try_from(s).map_err(|_| overflow(r.span))?;
                Ok(Value::Ideal(base.power(s)))
            }
            BinOp::Add | BinOp::Mul | BinOp::Le => {
                let ctx = ideal_ring(&lv).or(ideal_ring(&rv)).or(ctx.cloned());
                let a = self.to_ideal(lv, ctx.as_ref(), l.span)?;
                let b = self.to_ideal(rv, ctx.as_ref(), r.span)?;
                lift(span, a.ring().check(b.ring()).map(|_| ()))?;
                Ok(match op {
                    BinOp::Add => Value::Ideal(lift(span, a.sum(&b))?),
                    BinOp::Mul => Value::Ideal(lift(span, a.product(&b))?),
                    _ => Value::Bool(lift(span, a.is_subset(&b))?),
                })
            }
            BinOp::Eq | BinOp::Ne => {
                let same = match (&lv, &rv) {
                    (Value::Ideal(_), _) | (_, Value::Ideal(_)) => {
                        let ctx = ideal_ring(&lv).or(ideal_ring(&rv)).or(ctx.cloned());
                        let a = self.to_ideal(lv, ctx.as_ref(), l.span)?;
                        let b = self.to_ideal(rv, ctx.as_ref(), r.span)?;
                        lift(span, a.ring().check(b.ring()))?;
                        a == b
                    }
                    _ => lv.to_string() == rv.to_string(),
                };
                Ok(Value::Bool(same == (op == BinOp::Eq)))
            }
        }
    }

    fn call(&self, name: &str, args: &[Expr], ctx: Option<&Ring>, span: Span) -> EvalResult<Value> {
        let a = Args { env: self, args, ctx, span, name };
        match name {
            "intersect" => {
                a.arity(1, usize::MAX)?;
                let mut acc = a.ideal(0)?;
                for k in 1..args.len() {
                    let next = a.ideal_like(k, &acc)?;
                    acc = lift(span, (self.kernel.intersect)(&acc, &next))?;
                }
                Ok(Value::Ideal(acc))
            }
            "colon" => {
                a.arity(2, 2)?;
                let i = a.ideal(0)?;
                Ok(Value::Ideal(lift(span, i.colon(&a.ideal_like(1, &i)?))?))
            }
            "saturate" => {
                a.arity(2, 2)?;
                let i = a.ideal(0)?;
                Ok(Value::Ideal(lift(span, i.saturate(&a.ideal_like(1, &i)?))?))
            }
            "radical" => {
                a.arity(1, 1)?;
                Ok(Value::Ideal(a.ideal(0)?.radical()))
            }
            "contains" => {
                a.arity(2, 2)?;
                let i = a.ideal(0)?;
                let m = a.monomial(1, &i)?;
                Ok(Value::Bool(lift(span, i.contains(&m))?))
            }
            "satpow" => {
                a.arity(3, 3)?;
                let i = a.ideal(0)?;
                Ok(Value::Ideal(lift(span, saturated_power(&i, &a.ideal_like(1, &i)?, a.int(2)?))?))
            }
            "symb_min" | "symb_ass" => {
                a.arity(2, 2)?;
                let n = if name == "symb_min" { Notion::Min } else { Notion::Ass };
                Ok(Value::Ideal(lift(span, symbolic_power(&a.ideal(0)?, a.int(1)?, n))?))
            }
            "symb" => {
                a.arity(3, 3)?;
                Ok(Value::Ideal(lift(span, symbolic_power(&a.ideal(0)?, a.int(1)?, a.notion(2)?))?))
            }
            "ass" => {
                a.arity(1, 1)?;
                Ok(Value::Primes(lift(span, associated_primes(&a.ideal(0)?))?))
            }
            "min" => {
                a.arity(1, 1)?;
                Ok(Value::Primes(lift(span, minimal_primes(&a.ideal(0)?))?))
            }
            "decompose" => {
                a.arity(1, 1)?;
                Ok(Value::Components(lift(span, irreducible_decomposition(&a.ideal(0)?))?))
            }
            "primdec" => {
                a.arity(1, 1)?;
                Ok(Value::Primary(lift(span, primary_decomposition(&a.ideal(0)?))?))
            }
            "ass_star" => {
                a.arity(1, 2)?;
                let i = a.ideal(0)?;
                let n = a.opt_int(1)?.unwrap_or_else(|| default_ass_star_bound(&i));
                Ok(Value::AssStar(lift(span, ass_star_bounded(&i, n))?))
            }
            "ass_quot" => {
                a.arity(2, 2)?;
                Ok(Value::Primes(lift(span, ass_module_quotient(&a.ideal(0)?, a.int(1)?))?))
            }
            "grade_zero" => {
                a.arity(2, 2)?;
                let i = a.ideal(1)?;
                Ok(Value::Bool(lift(span, grade_zero(&a.prime(0, &i)?, &i))?))
            }
            "saturator_min" | "saturator_ass" => {
                a.arity(2, 2)?;
                let n = if name == "saturator_min" { Notion::Min } else { Notion::Ass };
                Ok(Value::Ideal(lift(span, saturator(&a.ideal(0)?, a.int(1)?, n))?))
            }
            "saturator_min_global" | "saturator_ass_global" => {
                a.arity(1, 2)?;
                let n = if name == "saturator_min_global" { Notion::Min } else { Notion::Ass };
                let i = a.ideal(0)?;
                let bound = a.opt_int(1)?.unwrap_or_else(|| default_ass_star_bound(&i));
                Ok(Value::Saturator(lift(span, saturator_global(&i, bound, n))?))
            }
            "witness" => {
                a.arity(2, 3)?;
                let i = a.ideal(0)?;
                let bound = a.opt_int(2)?.unwrap_or_else(|| default_ass_star_bound(&i));
                Ok(Value::Witness(lift(span, regular_witness(&i, a.notion(1)?, bound))?))
            }
            "depth" | "reg" | "pd" | "betti" => {
                a.arity(1, 2)?;
                let t = betti_table(&a.ideal(0)?, a.characteristic(1)?);
                Ok(match name {
                    "depth" => Value::Extended(t.depth()),
                    "reg" => Value::Extended(t.regularity()),
                    "pd" => Value::Extended(
                        t.projective_dimension().map_or(ExtendedInt::NegInf, |p| ExtendedInt::Finite(p as i64)),
                    ),
                    _ => Value::Betti(t),
                })
            }
            "dstar" => {
                a.arity(1, 1)?;
                Ok(Value::Ideal(deriv_star(&a.ideal(0)?)))
            }
            "ext" => {
                a.arity(2, 3)?;
                let joined = self.join_named(&a.word(1)?, args[1].span)?;
                let (i, emb) = match a.opt_word(2)?.as_deref() {
                    Some("left") => (a.ideal_like(0, &MonomialIdeal::zero(joined.left.source()))?, &joined.left),
                    Some("right") => (a.ideal_like(0, &MonomialIdeal::zero(joined.right.source()))?, &joined.right),
                    Some(other) => return err(args[2].span, format!("expected left or right, got `{other}`")),
                    None => {
                        let i = a.ideal(0)?;
                        let emb = pick_side(joined, i.ring(), span)?;
                        (i, emb)
                    }
                };
                Ok(Value::Ideal(lift(span, emb.extend(&i))?))
            }
            "binom_sat" | "check_binom_sat" | "check_incl" | "check_eq" | "check_depth_reg" => {
                let with_char = name == "check_depth_reg";
                a.arity(5, if with_char { 6 } else { 5 })?;
                let (i, j) = (a.ideal(0)?, a.ideal(2)?);
                let (k, l, s) = (a.ideal_like(1, &i)?, a.ideal_like(3, &j)?, a.int(4)?);
                let joined = self.joined_for(i.ring(), j.ring());
                Ok(match name {
                    "binom_sat" => Value::Ideal(lift(span, binomial_saturated(&joined, &i, &k, &j, &l, s))?),
                    "check_binom_sat" => {
                        let r = lift(span, check_binomial_saturated(&joined, &i, &k, &j, &l, s))?;
                        report(&r, pass_fail(r.equal))
                    }
                    "check_incl" => {
                        let r = lift(span, check_saturated_inclusion(&joined, &i, &k, &j, &l, s))?;
                        report(&r, pass_fail(r.passed))
                    }
                    "check_eq" => {
                        let r = lift(span, check_equality_criteria(&joined, &i, &k, &j, &l, s))?;
                        report(&r, r.verdict)
                    }
                    _ => {
                        let ch = a.characteristic(5)?;
                        let r = lift(span, check_depth_reg_binomial(&joined, &i, &k, &j, &l, s, ch))?;
                        report(&r, pass_fail(r.passed()))
                    }
                })
            }
            "binom_symb" | "check_binom_symb" | "check_symb_eq" => {
                a.arity(4, 4)?;
                let (i, j, s, n) = (a.ideal(0)?, a.ideal(1)?, a.int(2)?, a.notion(3)?);
                let joined = self.joined_for(i.ring(), j.ring());
                Ok(match name {
                    "binom_symb" => Value::Ideal(lift(span, binomial_symbolic(&joined, &i, &j, s, n))?),
                    "check_binom_symb" => {
                        let r = lift(span, check_binomial_symbolic(&joined, &i, &j, s, n))?;
                        report(&r, pass_fail(r.equal))
                    }
                    _ => {
                        let r = lift(span, check_symbolic_equality_criteria(&joined, &i, &j, s, n))?;
                        report(&r, r.verdict)
                    }
                })
            }
            "check_depth_reg_symb" => {
                a.arity(3, 4)?;
                let (i, j, s) = (a.ideal(0)?, a.ideal(1)?, a.int(2)?);
                let joined = self.joined_for(i.ring(), j.ring());
                let r = lift(span, check_depth_reg_symbolic(&joined, &i, &j, s, Notion::Ass, a.characteristic(3)?))?;
                Ok(report(&r, pass_fail(r.passed())))
            }
            "check_ass" => {
                a.arity(3, 3)?;
                let (i, j, s) = (a.ideal(0)?, a.ideal(1)?, a.int(2)?);
                let joined = self.joined_for(i.ring(), j.ring());
                let r = lift(span, check_ass_structure(&joined, &i, &j, s))?;
                Ok(report(&r, r.outcome()))
            }
            "check_routes" => {
                a.arity(3, 3)?;
                let r = lift(span, check_symbolic_routes(&a.ideal(0)?, a.int(1)?, a.notion(2)?))?;
                Ok(report(&r, pass_fail(r.agree)))
            }
            "check_dstar" => {
                a.arity(3, 3)?;
                let i = a.ideal(0)?;
                let r = lift(span, check_deriv_star(&i, &a.ideal_like(1, &i)?, a.int(2)?))?;
                Ok(report(&r, pass_fail(r.passed)))
            }
            "powers" => {
                a.arity(1, 1)?;
                Ok(Value::Filtration(FiltrationKind::Powers(a.ideal(0)?)))
            }
            "satpowers" => {
                a.arity(2, 2)?;
                let i = a.ideal(0)?;
                let k = a.ideal_like(1, &i)?;
                Ok(Value::Filtration(FiltrationKind::Saturated(i, k)))
            }
            "symbpowers" => {
                a.arity(2, 2)?;
                Ok(Value::Filtration(FiltrationKind::Symbolic(a.ideal(0)?, a.notion(1)?)))
            }
            "check_filt" => {
                a.arity(5, 5)?;
                let (fi, fk, fj) = (a.filtration(0)?, a.filtration(1)?, a.filtration(2)?);
                let (c, s) = (a.ideal(3)?, a.int(4)?);
                let joined = self.joined_for(fi.ring(), fj.ring());
                let build = |f: &FiltrationKind, k: usize| lift(args[k].span, f.build(s));
                let r = lift(
                    span,
                    check_filtration_identities(&joined, &build(&fi, 0)?, &build(&fk, 1)?, &build(&fj, 2)?, &c, s as usize),
                )?;
                Ok(report(&r, pass_fail(r.passed())))
            }
            _ => err(span, format!("unknown function `{name}`")),
        }
    }
}

fn overflow(span: Span) -> EvalError {
    EvalError { span, message: "integer overflow".into() }
}

fn as_extended(v: &Value) -> Option<ExtendedInt> {
    match v {
        Value::Int(n) => i64::try_from(*n).ok().map(ExtendedInt::Finite),
        Value::Extended(x) => Some(*x),
        _ => None,
    }
}

fn ideal_ring(v: &Value) -> Option<Ring> {
    match v {
        Value::Ideal(i) => Some(i.ring().clone()),
        _ => None,
    }
}

fn pick_side<'j>(joined: &'j JoinedRing, ring: &Ring, span: Span) -> EvalResult<&'j RingEmbedding> {
    match (joined.left.source() == ring, joined.right.source() == ring) {
        (true, false) => Ok(&joined.left),
        (false, true) => Ok(&joined.right),
        (true, true) => err(span, "both sides of the join have this ring; pass left or right"),
        (false, false) => err(span, format!("{ring} is not a side of {}", joined.ring)),
    }
}

/// Argument access for one call.
struct Args<'a> {
    env: &'a Env,
    args: &'a [Expr],
    ctx: Option<&'a Ring>,
    span: Span,
    name: &'a str,
}

impl Args<'_> {
    fn arity(&self, lo: usize, hi: usize) -> EvalResult<()> {
        let n = self.args.len();
        if n < lo || n > hi {
            let want = match (lo, hi) {
                (l, h) if l == h => format!("{l}"),
                (l, usize::MAX) => format!("at least {l}"),
                (l, h) => format!("{l} to {h}"),
            };
            return err(self.span, format!("`{}` takes {want} arguments, got {n}", self.name));
        }
        Ok(())
    }

    fn value(&self, k: usize) -> EvalResult<Value> {
        self.env.eval(&self.args[k], self.ctx)
    }

    fn ideal(&self, k: usize) -> EvalResult<MonomialIdeal> {
        let v = self.value(k)?;
        self.env.to_ideal(v, self.ctx, self.args[k].span)
    }

    /// Argument `k`, with bare variables read in the ring of `like`.
    fn ideal_like(&self, k: usize, like: &MonomialIdeal) -> EvalResult<MonomialIdeal> {
        let ctx = Some(like.ring());
        let v = self.env.eval(&self.args[k], ctx)?;
        self.env.to_ideal(v, ctx, self.args[k].span)
    }

    fn int(&self, k: usize) -> EvalResult<u32> {
        match self.value(k)? {
            Value::Int(n) => u32::try_from(n).map_err(|_| overflow(self.args[k].span)),
            other => err(self.args[k].span, format!("expected an integer, got {other}")),
        }
    }

    fn opt_int(&self, k: usize) -> EvalResult<Option<u32>> {
        if k < self.args.len() {
            self.int(k).map(Some)
        } else {
            Ok(None)
        }
    }

    fn word(&self, k: usize) -> EvalResult<String> {
        match &self.args[k].kind {
            ExprKind::Name(n) => Ok(n.clone()),
            _ => err(self.args[k].span, "expected a name"),
        }
    }

    fn opt_word(&self, k: usize) -> EvalResult<Option<String>> {
        if k < self.args.len() {
            self.word(k).map(Some)
        } else {
            Ok(None)
        }
    }

    fn notion(&self, k: usize) -> EvalResult<Notion> {
        lift(self.args[k].span, self.word(k)?.parse())
    }

    fn characteristic(&self, k: usize) -> EvalResult<Characteristic> {
        match self.opt_int(k)? {
            None | Some(0) => Ok(Characteristic::Zero),
            Some(p) => lift(self.args[k].span, Characteristic::prime(p)),
        }
    }

    fn monomial(&self, k: usize, like: &MonomialIdeal) -> EvalResult<Monomial> {
        let i = self.ideal_like(k, like)?;
        match i.generators().collect::<Vec<_>>().as_slice() {
            [m] => Ok(m.clone()),
            _ => err(self.args[k].span, format!("expected a monomial, got {i}")),
        }
    }

    fn prime(&self, k: usize, like: &MonomialIdeal) -> EvalResult<MonomialPrime> {
        let i = self.ideal_like(k, like)?;
        let mut support = Vec::new();
        for g in i.exponents() {
            match g.iter().enumerate().filter(|(_, e)| **e > 0).collect::<Vec<_>>().as_slice() {
                [(v, 1)] => support.push(*v),
                _ => return err(self.args[k].span, format!("expected an ideal generated by variables, got {i}")),
            }
        }
        lift(self.args[k].span, MonomialPrime::new(i.ring(), support))
    }

    fn filtration(&self, k: usize) -> EvalResult<FiltrationKind> {
        match self.value(k)? {
            Value::Filtration(f) => Ok(f),
            Value::Ideal(i) => Ok(FiltrationKind::Powers(i)),
            other => err(self.args[k].span, format!("expected a filtration, got {other}")),
        }
    }
}

/// Parses and runs `src` with a fresh environment.
pub fn run_script(src: &str, kernel: Kernel) -> RunOutcome {
    match parse(src) {
        Ok(script) => Env::new(kernel).run(&script),
        Err(e) => RunOutcome { error: Some(e.into()), ..RunOutcome::default() },
    }
}

/// Every function name the evaluator accepts.
pub const FUNCTIONS: &[&str] = &[
    "intersect",
    "colon",
    "saturate",
    "radical",
    "contains",
    "satpow",
    "symb_min",
    "symb_ass",
    "symb",
    "ass",
    "min",
    "decompose",
    "primdec",
    "ass_star",
    "ass_quot",
    "grade_zero",
    "saturator_min",
    "saturator_ass",
    "saturator_min_global",
    "saturator_ass_global",
    "witness",
    "depth",
    "reg",
    "pd",
    "betti",
    "dstar",
    "ext",
    "binom_sat",
    "binom_symb",
    "powers",
    "satpowers",
    "symbpowers",
    "check_binom_sat",
    "check_binom_symb",
    "check_incl",
    "check_eq",
    "check_symb_eq",
    "check_ass",
    "check_filt",
    "check_depth_reg",
    "check_depth_reg_symb",
    "check_routes",
    "check_dstar",
];
