use std::collections::HashMap;

use crate::algebra::{
    solve_linear_system_field, CoefficientDomain, FieldSolution, LinearSystem, Monomial, Polynomial, Scalar, SetVariable, SquareRule, VariableId,
};
use crate::error::{Error, Result};
use crate::iso::{build_iso_system, AxiomKind, IsoOptions, IsoSystem};
use crate::tseitin::{GadgetGraphPair, GadgetVertex};

use super::span::{DerivationLog, LogLine, Rule};

/// Line indices of one gadget's derivation.
#[derive(Clone, Debug)]
pub struct GadgetSteps {
    pub constraint: usize,
    /// `Σ_{c'} x(c,c') − 1`
    pub row_axiom: usize,
    /// Per incident edge: `Σ_{c' ∈ J_i} x(c,c') − x(w_i,w_i')`.
    pub edge_lines: Vec<usize>,
    /// `Σ_i x(w_i,w_i') − 1`
    pub parity_line: usize,
    /// `Σ_i y_i − [charged]` in the normalised variables.
    pub normalised: usize,
    pub charged: bool,
}

/// The degree-2 derivation of one parity equation per gadget, the linear
/// system those equations form over the two-element field, and its solution.
#[derive(Clone, Debug)]
pub struct GadgetDerivation {
    pub iso: IsoSystem,
    pub log: DerivationLog,
    pub steps: Vec<GadgetSteps>,
    /// Column `e` is `y_e = x(e^{-1}, e^{1}')`.
    pub y: Vec<VariableId>,
    pub system: LinearSystem,
    pub solution: FieldSolution,
}

impl GadgetDerivation {
    /// Replays the log against the isomorphism axioms and checks that each
    /// normalised line is the corresponding row of the linear system. An
    /// unsolvable system must end the log in 1.
    pub fn verify(&self) -> Result<()> {
        let values = self.log.replay_lines(&self.iso.axioms)?;
        for (row, s) in self.system.rows().iter().zip(&self.steps) {
            if values[s.normalised] != self.row_polynomial(&row.coeffs, &row.rhs) {
                return Err(Error::verification(format!("normalised line of constraint {} differs from its row", s.constraint)));
            }
        }
        if !self.solution.is_solvable() && !values.last().is_some_and(|v| v.is_one()) {
            return Err(Error::verification("unsolvable system without a final 1"));
        }
        Ok(())
    }

    fn row_polynomial(&self, coeffs: &[(u32, Scalar)], rhs: &Scalar) -> Polynomial {
        let d = self.system.domain();
        let mut p = Polynomial::constant(d, d.neg(rhs));
        for (c, a) in coeffs {
            p.add_term(Monomial::var(self.y[*c as usize]), a.clone());
        }
        p
    }
}

struct Builder<'a> {
    lines: Vec<LogLine>,
    axioms: &'a [Polynomial],
    d: CoefficientDomain,
}

impl Builder<'_> {
    fn push(&mut self, rule: Rule) -> Result<usize> {
        let value = match &rule {
            Rule::Axiom { axiom } => self.axioms[*axiom].clone(),
            Rule::MulVar { line, var } => self.lines[*line].value.mul_monomial(&Monomial::var(*var)),
            Rule::LinComb { terms } => {
                let mut acc = Polynomial::zero(self.d);
                for (j, c) in terms {
                    acc = acc.add(&self.lines[*j].value.scale(c))?;
                }
                acc
            }
            Rule::AxiomProduct { .. } => return Err(Error::Internal("unused rule".into())),
        };
        self.lines.push(LogLine { rule, value: value.reduce_squares(SquareRule::Boolean) });
        Ok(self.lines.len() - 1)
    }

    fn axiom(&mut self, axiom: usize) -> Result<usize> {
        self.push(Rule::Axiom { axiom })
    }

    fn minus(&mut self, first: usize, rest: &[usize]) -> Result<usize> {
        let (one, minus) = (self.d.one(), self.d.from_i64(-1));
        let terms = std::iter::once((first, one)).chain(rest.iter().map(|&j| (j, minus.clone()))).collect();
        self.push(Rule::LinComb { terms })
    }
}

/// Derives, for every gadget of a 3-regular parity CSP, the equation
/// `Σ_{e∋t} y_e = [t ∈ T]` from the isomorphism axioms over the two-element
/// field, then solves the resulting system.
pub fn gadget_parity_derivation(pair: &GadgetGraphPair) -> Result<GadgetDerivation> {
    let csp = &pair.csp;
    if !csp.group.is_z2() {
        return Err(Error::invalid(format!("gadget derivation needs Z2, got {}", csp.group.name())));
    }
    if let Some(c) = csp.constraints.iter().find(|c| c.arity() != 3) {
        return Err(Error::Precondition(format!("constraint of arity {}; the derivation covers 3-regular bases", c.arity())));
    }
    let f2 = CoefficientDomain::prime_field(2)?;
    let iso = build_iso_system(&pair.g, &pair.g_tilde, f2, IsoOptions::default())?;
    let space = &iso.space;
    let mut sums: HashMap<AxiomKind, usize> = HashMap::new();
    let mut conflicts: HashMap<(VariableId, VariableId), usize> = HashMap::new();
    for (i, (kind, p)) in iso.kinds.iter().zip(&iso.axioms).enumerate() {
        match kind {
            AxiomKind::Conflict(..) => {
                let vs = p.variables();
                let key = (vs[0], *vs.last().expect("nonconstant"));
                conflicts.insert(key, i);
            }
            k => {
                sums.insert(k.clone(), i);
            }
        }
    }
    let var = |v: usize, w: usize| space.var(v, w).ok_or_else(|| Error::Internal("pair variable pruned".into()));
    let conflict =
        |a: VariableId, b: VariableId| conflicts.get(&(a.min(b), a.max(b))).copied().ok_or_else(|| Error::Internal("expected conflict axiom missing".into()));
    let g_vertex = |p: GadgetVertex| pair.vertex(&p).ok_or_else(|| Error::Internal("gadget vertex missing".into()));
    let h_vertex = |p: GadgetVertex| pair.vertex_tilde(&p).ok_or_else(|| Error::Internal("gadget vertex missing".into()));

    let y: Vec<VariableId> = (0..csp.num_vars())
        .map(|x| var(g_vertex(GadgetVertex::Variable { var: x, element: 1 })?, h_vertex(GadgetVertex::Variable { var: x, element: 0 })?))
        .collect::<Result<_>>()?;
    let mut b = Builder { lines: Vec::new(), axioms: &iso.axioms, d: f2 };
    let mut steps = Vec::new();
    for (ci, con) in csp.constraints.iter().enumerate() {
        let beta = &con.coset[0];
        let c = g_vertex(GadgetVertex::Constraint { constraint: ci, tuple: beta.clone() })?;
        let deltas = &pair.homogenised.constraints[ci].coset;
        let primes: Vec<usize> = deltas.iter().map(|t| h_vertex(GadgetVertex::Constraint { constraint: ci, tuple: t.clone() })).collect::<Result<_>>()?;
        let row_axiom = b.axiom(sums[&AxiomKind::ColumnSum(c)])?;
        let mut edge_lines = Vec::new();
        for (i, (&x, &bi)) in con.vars.iter().zip(beta).enumerate() {
            let w = g_vertex(GadgetVertex::Variable { var: x, element: bi })?;
            let w0 = h_vertex(GadgetVertex::Variable { var: x, element: 0 })?;
            let w1 = h_vertex(GadgetVertex::Variable { var: x, element: 1 })?;
            let xw0 = var(w, w0)?;
            let times_w = b.push(Rule::MulVar { line: row_axiom, var: xw0 })?;
            let mut off = Vec::new();
            for (t, &cp) in deltas.iter().zip(&primes) {
                if t[i] != 0 {
                    off.push(b.axiom(conflict(xw0, var(c, cp)?)?)?);
                }
            }
            let kept = b.minus(times_w, &off)?;
            let w_row = b.axiom(sums[&AxiomKind::ColumnSum(w)])?;
            let mut singles = Vec::new();
            for (t, &cp) in deltas.iter().zip(&primes) {
                if t[i] == 0 {
                    let xc = var(c, cp)?;
                    let times_c = b.push(Rule::MulVar { line: w_row, var: xc })?;
                    let other = b.axiom(conflict(xc, var(w, w1)?)?)?;
                    singles.push(b.minus(times_c, &[other])?);
                }
            }
            edge_lines.push(b.minus(kept, &singles)?);
        }
        let parity_line = b.minus(row_axiom, &edge_lines)?;
        let mut normalise = Vec::new();
        for (&x, &bi) in con.vars.iter().zip(beta) {
            if bi == 0 {
                normalise.push(b.axiom(sums[&AxiomKind::RowSum(h_vertex(GadgetVertex::Variable { var: x, element: 0 })?)])?);
            }
        }
        let normalised = b.minus(parity_line, &normalise)?;
        let charged = beta.iter().filter(|&&a| a == 1).count() % 2 == 1;
        steps.push(GadgetSteps { constraint: ci, row_axiom, edge_lines, parity_line, normalised, charged });
    }

    let column_of: HashMap<VariableId, u32> = y.iter().enumerate().map(|(i, &v)| (v, i as u32)).collect();
    let mut system = LinearSystem::new(f2, y.iter().map(|&v| SetVariable::singleton(v)).collect())?;
    for s in &steps {
        let p = &b.lines[s.normalised].value;
        let mut coeffs = Vec::new();
        let mut rhs = f2.zero();
        for (m, a) in p.terms() {
            match m.degree() {
                0 => rhs = f2.neg(a),
                1 => coeffs.push((
                    *column_of.get(&m.vars().next().expect("degree one")).ok_or_else(|| Error::Internal("normalised line leaves y".into()))?,
                    a.clone(),
                )),
                _ => return Err(Error::Internal("normalised line is not linear".into())),
            }
        }
        coeffs.sort_by_key(|e| e.0);
        system.push_row(coeffs, rhs, s.constraint)?;
    }
    let solution = solve_linear_system_field(&system)?;
    if let FieldSolution::Unsolvable(weights) = &solution {
        let terms = weights.iter().map(|(r, a)| (steps[*r].normalised, f2.neg(a))).collect();
        b.push(Rule::LinComb { terms })?;
    }
    let log = DerivationLog { domain: f2, degree: 2, monomial_only: false, square_rule: SquareRule::Boolean, lines: b.lines };
    let out = GadgetDerivation { iso, log, steps, y, system, solution };
    out.verify()?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::{complete, cycle};
    use crate::tseitin::{build_gadget_graphs, tseitin_csp, TseitinInstance};

    fn k4(charged: &[usize]) -> GadgetDerivation {
        let inst = TseitinInstance::new(complete(4).unwrap(), charged.iter().copied()).unwrap();
        gadget_parity_derivation(&build_gadget_graphs(&tseitin_csp(&inst).unwrap()).unwrap()).unwrap()
    }

    #[test]
    fn odd_charge_is_refuted() {
        let d = k4(&[0]);
        assert!(!d.solution.is_solvable());
        d.log.replay(&d.iso.axioms).unwrap();
        assert!(d.log.lines.iter().all(|l| l.value.degree() <= 2));
    }

    #[test]
    fn even_charge_is_solvable() {
        assert!(k4(&[]).solution.is_solvable());
        assert!(k4(&[1, 3]).solution.is_solvable());
    }

    #[test]
    fn line_shapes() {
        let d = k4(&[2]);
        let f2 = d.log.domain;
        for s in &d.steps {
            for &l in &s.edge_lines {
                // two pair variables of the constraint class, one of an edge class
                let p = &d.log.lines[l].value;
                assert_eq!((p.num_terms(), p.degree()), (3, 1));
                assert!(p.constant_term().is_zero());
            }
            let parity = &d.log.lines[s.parity_line].value;
            assert_eq!((parity.num_terms(), parity.constant_term()), (4, f2.from_i64(-1)));
            let row = &d.log.lines[s.normalised].value;
            assert_eq!(row.constant_term(), if s.charged { f2.one() } else { f2.zero() });
            assert_eq!(s.charged, s.constraint == 2);
        }
    }

    #[test]
    fn needs_three_regular_base() {
        let inst = TseitinInstance::new(cycle(4).unwrap(), [0]).unwrap();
        let pair = build_gadget_graphs(&tseitin_csp(&inst).unwrap()).unwrap();
        assert!(matches!(gadget_parity_derivation(&pair), Err(Error::Precondition(_))));
    }
}
