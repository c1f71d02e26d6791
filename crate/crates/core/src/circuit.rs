//! Algebraic circuits over `+`, `*`, constants and variables, and the
//! line-based instance format built from them.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::field::{mk_field, Embedding, Field, FieldElement};
use crate::poly::{PolyRing, Polynomial};
use crate::ring::Ring;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Gate {
    /// 0-based variable index.
    Var(usize),
    Const(FieldElement),
    Add(usize, usize),
    Mul(usize, usize),
}

/// A DAG of gates in topological order; operands always refer to earlier gates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    nvars: usize,
    gates: Vec<Gate>,
    output: usize,
}

/// Incremental construction of a [`Circuit`].
#[derive(Clone, Debug)]
pub struct CircuitBuilder {
    nvars: usize,
    gates: Vec<Gate>,
}

impl CircuitBuilder {
    pub fn new(nvars: usize) -> Self {
        CircuitBuilder {
            nvars,
            gates: Vec::new(),
        }
    }

    fn push(&mut self, g: Gate) -> usize {
        self.gates.push(g);
        self.gates.len() - 1
    }

    pub fn var(&mut self, i: usize) -> usize {
        assert!(i < self.nvars, "variable {i} out of range");
        self.push(Gate::Var(i))
    }

    pub fn constant(&mut self, c: FieldElement) -> usize {
        self.push(Gate::Const(c))
    }

    pub fn add(&mut self, a: usize, b: usize) -> usize {
        self.push(Gate::Add(a, b))
    }

    pub fn mul(&mut self, a: usize, b: usize) -> usize {
        self.push(Gate::Mul(a, b))
    }

    pub fn sub(&mut self, a: usize, b: usize, field: &Field) -> usize {
        let m1 = self.constant(field.neg(field.one()));
        let nb = self.mul(m1, b);
        self.add(a, nb)
    }

    /// `a^n` by square-and-multiply.
    pub fn pow(&mut self, a: usize, n: u64, field: &Field) -> usize {
        if n == 0 {
            return self.constant(field.one());
        }
        let mut acc: Option<usize> = None;
        let mut base = a;
        let mut k = n;
        loop {
            if k & 1 == 1 {
                acc = Some(match acc {
                    None => base,
                    Some(x) => self.mul(x, base),
                });
            }
            k >>= 1;
            if k == 0 {
                break;
            }
            base = self.mul(base, base);
        }
        acc.unwrap()
    }

    /// Copies the gates of `c`, wiring its variable `i` to gate `var_map[i]`
    /// of this builder. Returns the index of the copied output.
    pub fn inline(&mut self, c: &Circuit, var_map: &[usize]) -> usize {
        let mut map = Vec::with_capacity(c.gates.len());
        for g in &c.gates {
            let idx = match *g {
                Gate::Var(i) => var_map[i],
                Gate::Const(v) => self.push(Gate::Const(v)),
                Gate::Add(a, b) => self.push(Gate::Add(map[a], map[b])),
                Gate::Mul(a, b) => self.push(Gate::Mul(map[a], map[b])),
            };
            map.push(idx);
        }
        map[c.output]
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn finish(self, output: usize) -> Circuit {
        Circuit::new(self.nvars, self.gates, output).expect("builder produces valid circuits")
    }
}

impl Circuit {
    pub fn new(nvars: usize, gates: Vec<Gate>, output: usize) -> Result<Self> {
        if gates.is_empty() {
            return Err(Error::Precondition("circuit without gates".into()));
        }
        for (k, g) in gates.iter().enumerate() {
            let ok = match *g {
                Gate::Var(i) => i < nvars,
                Gate::Const(_) => true,
                Gate::Add(a, b) | Gate::Mul(a, b) => a < k && b < k,
            };
            if !ok {
                return Err(Error::Precondition(format!("gate {k} is malformed: {g:?}")));
            }
        }
        if output >= gates.len() {
            return Err(Error::Precondition(format!("output {output} out of range")));
        }
        Ok(Circuit {
            nvars,
            gates,
            output,
        })
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut b = CircuitBuilder::new(nvars);
        let x = b.var(i);
        b.finish(x)
    }

    pub fn constant(nvars: usize, c: FieldElement) -> Self {
        let mut b = CircuitBuilder::new(nvars);
        let x = b.constant(c);
        b.finish(x)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn output(&self) -> usize {
        self.output
    }

    pub fn size(&self) -> usize {
        self.gates.len()
    }

    /// Evaluates every gate once, in order, over any [`Ring`].
    pub fn eval<R: Ring>(&self, ring: &R, point: &[R::Elem]) -> Result<R::Elem> {
        let mut scratch = Vec::with_capacity(self.gates.len());
        self.eval_with(ring, point, &mut scratch)
    }

    /// As [`Circuit::eval`], reusing a caller-provided buffer.
    pub fn eval_with<R: Ring>(
        &self,
        ring: &R,
        point: &[R::Elem],
        scratch: &mut Vec<R::Elem>,
    ) -> Result<R::Elem> {
        if point.len() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                got: point.len(),
            });
        }
        scratch.clear();
        for g in &self.gates {
            let v = match *g {
                Gate::Var(i) => point[i].clone(),
                Gate::Const(c) => ring.constant(c),
                Gate::Add(a, b) => ring.add(&scratch[a], &scratch[b]),
                Gate::Mul(a, b) => ring.mul(&scratch[a], &scratch[b]),
            };
            scratch.push(v);
        }
        Ok(scratch[self.output].clone())
    }

    /// Per-gate syntactic degree bound (saturating).
    pub fn gate_degrees(&self) -> Vec<u64> {
        let mut deg: Vec<u64> = Vec::with_capacity(self.gates.len());
        for g in &self.gates {
            let d = match *g {
                Gate::Var(_) => 1,
                Gate::Const(_) => 0,
                Gate::Add(a, b) => deg[a].max(deg[b]),
                Gate::Mul(a, b) => u64::saturating_add(deg[a], deg[b]),
            };
            deg.push(d);
        }
        deg
    }

    /// var -> 1, const -> 0, add -> max, mul -> sum.
    pub fn syntactic_degree(&self) -> u64 {
        self.gate_degrees()[self.output]
    }

    /// Exact expansion into a sparse polynomial.
    ///
    /// `cap` bounds both the number of terms and the syntactic degree of
    /// every intermediate gate.
    pub fn expand(&self, field: &Field, cap: usize) -> Result<Polynomial> {
        let degrees = self.gate_degrees();
        let mut last_use = vec![0usize; self.gates.len()];
        for (k, g) in self.gates.iter().enumerate() {
            if let Gate::Add(a, b) | Gate::Mul(a, b) = *g {
                last_use[a] = k;
                last_use[b] = k;
            }
        }
        let ring = PolyRing::new(field, self.nvars);
        let mut vals: Vec<Option<Polynomial>> = vec![None; self.gates.len()];
        for (k, g) in self.gates.iter().enumerate() {
            if degrees[k] > cap as u64 {
                return Err(Error::ResourceLimit(format!(
                    "gate {} has degree bound {} (cap {cap})",
                    k + 1,
                    degrees[k]
                )));
            }
            let v = match *g {
                Gate::Var(i) => ring.var(i),
                Gate::Const(c) => ring.constant(c),
                Gate::Add(a, b) => ring.add(vals[a].as_ref().unwrap(), vals[b].as_ref().unwrap()),
                Gate::Mul(a, b) => ring.mul(vals[a].as_ref().unwrap(), vals[b].as_ref().unwrap()),
            };
            if v.num_terms() > cap {
                return Err(Error::ResourceLimit(format!(
                    "gate {} expands to {} terms (cap {cap})",
                    k + 1,
                    v.num_terms()
                )));
            }
            vals[k] = Some(v);
            if let Gate::Add(a, b) | Gate::Mul(a, b) = *g {
                for op in [a, b] {
                    if last_use[op] == k && op != self.output {
                        vals[op] = None;
                    }
                }
            }
        }
        Ok(vals[self.output].take().unwrap())
    }

    /// Circuit for the partial derivative in variable `i` (0-based), by
    /// forward-mode sum and product rules. Known-zero derivatives are
    /// folded away and unreachable gates dropped.
    pub fn formal_partial(&self, i: usize, field: &Field) -> Circuit {
        let mut b = CircuitBuilder::new(self.nvars);
        let mut value = Vec::with_capacity(self.gates.len());
        for g in &self.gates {
            let idx = match *g {
                Gate::Var(j) => b.var(j),
                Gate::Const(c) => b.constant(c),
                Gate::Add(x, y) => b.add(value[x], value[y]),
                Gate::Mul(x, y) => b.mul(value[x], value[y]),
            };
            value.push(idx);
        }
        let mut zero = None;
        let mut one = None;
        // None marks a derivative that is identically zero.
        let mut deriv: Vec<Option<usize>> = Vec::with_capacity(self.gates.len());
        for g in &self.gates {
            let d = match *g {
                Gate::Var(j) if j == i => {
                    Some(*one.get_or_insert_with(|| b.constant(field.one())))
                }
                Gate::Var(_) | Gate::Const(_) => None,
                Gate::Add(x, y) => match (deriv[x], deriv[y]) {
                    (None, None) => None,
                    (Some(dx), None) => Some(dx),
                    (None, Some(dy)) => Some(dy),
                    (Some(dx), Some(dy)) => Some(b.add(dx, dy)),
                },
                Gate::Mul(x, y) => {
                    let left = deriv[x].map(|dx| b.mul(dx, value[y]));
                    let right = deriv[y].map(|dy| b.mul(value[x], dy));
                    match (left, right) {
                        (None, None) => None,
                        (Some(l), None) => Some(l),
                        (None, Some(r)) => Some(r),
                        (Some(l), Some(r)) => Some(b.add(l, r)),
                    }
                }
            };
            deriv.push(d);
        }
        let out = match deriv[self.output] {
            Some(d) => d,
            None => *zero.get_or_insert_with(|| b.constant(field.zero())),
        };
        b.finish(out).pruned()
    }

    /// Drops gates the output does not depend on.
    pub fn pruned(&self) -> Circuit {
        let mut live = vec![false; self.gates.len()];
        live[self.output] = true;
        for k in (0..self.gates.len()).rev() {
            if !live[k] {
                continue;
            }
            if let Gate::Add(a, b) | Gate::Mul(a, b) = self.gates[k] {
                live[a] = true;
                live[b] = true;
            }
        }
        let mut map = vec![usize::MAX; self.gates.len()];
        let mut gates = Vec::new();
        for (k, g) in self.gates.iter().enumerate() {
            if !live[k] {
                continue;
            }
            map[k] = gates.len();
            gates.push(match *g {
                Gate::Add(a, b) => Gate::Add(map[a], map[b]),
                Gate::Mul(a, b) => Gate::Mul(map[a], map[b]),
                ref other => other.clone(),
            });
        }
        Circuit {
            nvars: self.nvars,
            gates,
            output: map[self.output],
        }
    }

    pub fn map_constants(&self, f: impl Fn(FieldElement) -> FieldElement) -> Circuit {
        Circuit {
            nvars: self.nvars,
            gates: self
                .gates
                .iter()
                .map(|g| match *g {
                    Gate::Const(c) => Gate::Const(f(c)),
                    ref other => other.clone(),
                })
                .collect(),
            output: self.output,
        }
    }

    /// Replaces variable `j` by the circuit `subs[j]` (all over `new_nvars`).
    pub fn substitute(&self, new_nvars: usize, subs: &[Circuit]) -> Result<Circuit> {
        if subs.len() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                got: subs.len(),
            });
        }
        if let Some(bad) = subs.iter().find(|s| s.nvars != new_nvars) {
            return Err(Error::ArityMismatch {
                expected: new_nvars,
                got: bad.nvars,
            });
        }
        let mut used = vec![false; self.nvars];
        for g in &self.gates {
            if let Gate::Var(j) = *g {
                used[j] = true;
            }
        }
        let mut b = CircuitBuilder::new(new_nvars);
        let base_vars: Vec<usize> = (0..new_nvars).map(|i| b.var(i)).collect();
        let mut var_map = vec![usize::MAX; self.nvars];
        for j in 0..self.nvars {
            if used[j] {
                var_map[j] = b.inline(&subs[j], &base_vars);
            }
        }
        let out = b.inline(self, &var_map);
        Ok(b.finish(out).pruned())
    }

    /// Re-declares the circuit over more variables, keeping variable `i` as
    /// variable `i + shift`.
    pub fn widen(&self, new_nvars: usize, shift: usize) -> Circuit {
        assert!(self.nvars + shift <= new_nvars);
        Circuit {
            nvars: new_nvars,
            gates: self
                .gates
                .iter()
                .map(|g| match *g {
                    Gate::Var(i) => Gate::Var(i + shift),
                    ref other => other.clone(),
                })
                .collect(),
            output: self.output,
        }
    }

    /// `sum_j coeffs[j] * parts[j]`, sharing the gates of each part.
    pub fn linear_combination(
        nvars: usize,
        parts: &[&Circuit],
        coeffs: &[FieldElement],
        field: &Field,
    ) -> Circuit {
        assert_eq!(parts.len(), coeffs.len());
        let mut b = CircuitBuilder::new(nvars);
        let vars: Vec<usize> = (0..nvars).map(|i| b.var(i)).collect();
        let mut acc: Option<usize> = None;
        for (part, &c) in parts.iter().zip(coeffs) {
            if c.is_zero() {
                continue;
            }
            let out = b.inline(part, &vars);
            let term = if c == field.one() {
                out
            } else {
                let k = b.constant(c);
                b.mul(k, out)
            };
            acc = Some(match acc {
                None => term,
                Some(a) => b.add(a, term),
            });
        }
        let out = acc.unwrap_or_else(|| b.constant(field.zero()));
        b.finish(out).pruned()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedCircuit {
    pub name: String,
    pub circuit: Circuit,
}

/// Degrees of the circuits: per-circuit syntactic bounds, their product and max.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeProfile {
    pub degrees: Vec<u64>,
    /// Product (saturating).
    pub product: u128,
    pub max: u64,
}

/// A list of circuits `f_1..f_m` in `n` variables over one field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub field: Field,
    pub nvars: usize,
    pub circuits: Vec<NamedCircuit>,
}

impl Instance {
    pub fn new(field: Field, nvars: usize, circuits: Vec<Circuit>) -> Self {
        let circuits = circuits
            .into_iter()
            .enumerate()
            .map(|(i, circuit)| {
                assert_eq!(circuit.nvars(), nvars);
                NamedCircuit {
                    name: format!("f{}", i + 1),
                    circuit,
                }
            })
            .collect();
        Instance {
            field,
            nvars,
            circuits,
        }
    }

    /// Number of circuits.
    pub fn m(&self) -> usize {
        self.circuits.len()
    }

    pub fn circuit(&self, i: usize) -> &Circuit {
        &self.circuits[i].circuit
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        let degrees: Vec<u64> = self
            .circuits
            .iter()
            .map(|c| c.circuit.syntactic_degree())
            .collect();
        let product = degrees
            .iter()
            .fold(1u128, |acc, &d| acc.saturating_mul(d as u128));
        let max = degrees.iter().copied().max().unwrap_or(0);
        DegreeProfile {
            degrees,
            product,
            max,
        }
    }

    pub fn subset(&self, indices: &[usize]) -> Instance {
        Instance {
            field: self.field.clone(),
            nvars: self.nvars,
            circuits: indices.iter().map(|&i| self.circuits[i].clone()).collect(),
        }
    }

    /// The same circuits with constants pushed through a field embedding.
    pub fn lift(&self, emb: &Embedding) -> Result<Instance> {
        if emb.from != self.field {
            return Err(Error::FieldMismatch(format!(
                "embedding starts at {}, instance is over {}",
                emb.from, self.field
            )));
        }
        Ok(Instance {
            field: emb.to.clone(),
            nvars: self.nvars,
            circuits: self
                .circuits
                .iter()
                .map(|c| NamedCircuit {
                    name: c.name.clone(),
                    circuit: c.circuit.map_constants(|v| emb.map(v)),
                })
                .collect(),
        })
    }

    /// Lifts to `F_{q^d}`.
    pub fn extend(&self, d: usize) -> Result<Instance> {
        let (_, emb) = self.field.extension(d)?;
        self.lift(&emb)
    }

    pub fn expand_all(&self, cap: usize) -> Result<Vec<Polynomial>> {
        self.circuits
            .iter()
            .map(|c| c.circuit.expand(&self.field, cap))
            .collect()
    }

    /// `(f_1(a), ..., f_m(a))`.
    pub fn eval_point(&self, point: &[FieldElement]) -> Result<Vec<FieldElement>> {
        self.circuits
            .iter()
            .map(|c| c.circuit.eval(&self.field, point))
            .collect()
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Instance> {
        let text = std::fs::read_to_string(path)?;
        Instance::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Instance> {
        Parser::default().run(text)
    }

    pub fn serialize(&self) -> String {
        let mut out = String::new();
        writeln!(out, "field {} {}", self.field.p(), self.field.e()).unwrap();
        writeln!(out, "nvars {}", self.nvars).unwrap();
        for nc in &self.circuits {
            writeln!(out, "circuit {}", nc.name).unwrap();
            for (k, g) in nc.circuit.gates.iter().enumerate() {
                let id = k + 1;
                match *g {
                    Gate::Var(i) => writeln!(out, "{id} var {}", i + 1),
                    Gate::Const(c) => {
                        let coeffs: Vec<String> = self
                            .field
                            .coeffs(c)
                            .iter()
                            .map(|d| d.to_string())
                            .collect();
                        writeln!(out, "{id} const {}", coeffs.join(","))
                    }
                    Gate::Add(a, b) => writeln!(out, "{id} add {} {}", a + 1, b + 1),
                    Gate::Mul(a, b) => writeln!(out, "{id} mul {} {}", a + 1, b + 1),
                }
                .unwrap();
            }
            writeln!(out, "output {}", nc.circuit.output + 1).unwrap();
        }
        out
    }
}

#[derive(Default)]
struct Parser {
    field: Option<Field>,
    nvars: Option<usize>,
    circuits: Vec<NamedCircuit>,
    open: Option<OpenCircuit>,
}

struct OpenCircuit {
    name: String,
    line: usize,
    ids: std::collections::HashMap<u64, usize>,
    last_id: u64,
    gates: Vec<Gate>,
    closed: bool,
}

fn syntax(line: usize, msg: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        msg: msg.into(),
    }
}

fn num<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    tok.ok_or_else(|| syntax(line, format!("missing {what}")))?
        .parse()
        .map_err(|_| syntax(line, format!("invalid {what}")))
}

impl Parser {
    fn run(mut self, text: &str) -> Result<Instance> {
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let toks: Vec<&str> = content.split_whitespace().collect();
            match toks[0] {
                "field" => {
                    if self.field.is_some() {
                        return Err(syntax(line, "duplicate field line"));
                    }
                    if toks.len() != 3 {
                        return Err(syntax(line, "expected `field <p> <e>`"));
                    }
                    let p: u64 = num(toks.get(1).copied(), line, "characteristic")?;
                    let e: usize = num(toks.get(2).copied(), line, "extension degree")?;
                    self.field = Some(mk_field(p, e)?);
                }
                "nvars" => {
                    if self.field.is_none() {
                        return Err(syntax(line, "`nvars` before `field`"));
                    }
                    if toks.len() != 2 {
                        return Err(syntax(line, "expected `nvars <n>`"));
                    }
                    self.nvars = Some(num(toks.get(1).copied(), line, "variable count")?);
                }
                "circuit" => {
                    if self.field.is_none() || self.nvars.is_none() {
                        return Err(syntax(line, "`circuit` before `field` and `nvars`"));
                    }
                    if toks.len() != 2 {
                        return Err(syntax(line, "expected `circuit <name>`"));
                    }
                    self.close(line)?;
                    self.open = Some(OpenCircuit {
                        name: toks[1].to_string(),
                        line,
                        ids: Default::default(),
                        last_id: 0,
                        gates: vec![],
                        closed: false,
                    });
                }
                "output" => {
                    let oc = self.open_circuit(line)?;
                    let id: u64 = num(toks.get(1).copied(), line, "gate id")?;
                    if oc.gates.is_empty() {
                        return Err(syntax(line, "empty gate list"));
                    }
                    let out = *oc
                        .ids
                        .get(&id)
                        .ok_or(Error::UndefinedGate { line, id })?;
                    let nvars = self.nvars.unwrap();
                    let oc = self.open.take().unwrap();
                    let circuit = Circuit::new(nvars, oc.gates, out)
                        .map_err(|e| syntax(line, e.to_string()))?;
                    self.circuits.push(NamedCircuit {
                        name: oc.name,
                        circuit,
                    });
                    self.open = Some(OpenCircuit {
                        name: String::new(),
                        line,
                        ids: Default::default(),
                        last_id: 0,
                        gates: vec![],
                        closed: true,
                    });
                }
                _ => self.gate(line, &toks)?,
            }
        }
        let end = text.lines().count() + 1;
        self.close(end)?;
        let field = self.field.ok_or_else(|| syntax(end, "missing `field` line"))?;
        let nvars = self.nvars.ok_or_else(|| syntax(end, "missing `nvars` line"))?;
        Ok(Instance {
            field,
            nvars,
            circuits: self.circuits,
        })
    }

    fn open_circuit(&mut self, line: usize) -> Result<&mut OpenCircuit> {
        match &mut self.open {
            Some(oc) if !oc.closed => Ok(oc),
            _ => Err(syntax(line, "gate outside a `circuit` block")),
        }
    }

    fn close(&mut self, line: usize) -> Result<()> {
        match &self.open {
            Some(oc) if !oc.closed => {
                if oc.gates.is_empty() {
                    Err(syntax(oc.line, "empty gate list"))
                } else {
                    Err(syntax(line, format!("circuit `{}` has no `output` line", oc.name)))
                }
            }
            _ => Ok(()),
        }
    }

    fn gate(&mut self, line: usize, toks: &[&str]) -> Result<()> {
        let field = self.field.clone();
        let nvars = self.nvars;
        let oc = self.open_circuit(line)?;
        let id: u64 = toks[0]
            .parse()
            .map_err(|_| syntax(line, format!("unknown directive `{}`", toks[0])))?;
        if id == 0 || id <= oc.last_id {
            return Err(syntax(line, "gate ids must be positive and strictly increasing"));
        }
        let kind = toks.get(1).copied().unwrap_or("");
        let operand = |k: usize, oc: &OpenCircuit| -> Result<usize> {
            let r: u64 = num(toks.get(k).copied(), line, "operand")?;
            oc.ids
                .get(&r)
                .copied()
                .ok_or(Error::UndefinedGate { line, id: r })
        };
        let arity = match kind {
            "var" | "const" => 3,
            "add" | "mul" => 4,
            other => return Err(syntax(line, format!("unknown gate kind `{other}`"))),
        };
        if toks.len() != arity {
            return Err(syntax(line, format!("wrong number of fields for `{kind}`")));
        }
        let g = match kind {
            "var" => {
                let i: usize = num(toks.get(2).copied(), line, "variable index")?;
                let n = nvars.unwrap();
                if i == 0 || i > n {
                    return Err(syntax(line, format!("variable {i} outside 1..={n}")));
                }
                Gate::Var(i - 1)
            }
            "const" => {
                let f = field.unwrap();
                let c = f
                    .parse_element(toks[2])
                    .map_err(|e| Error::FieldMismatch(format!("line {line}: {e}")))?;
                Gate::Const(c)
            }
            "add" => Gate::Add(operand(2, oc)?, operand(3, oc)?),
            _ => Gate::Mul(operand(2, oc)?, operand(3, oc)?),
        };
        oc.gates.push(g);
        oc.ids.insert(id, oc.gates.len() - 1);
        oc.last_id = id;
        Ok(())
    }
}
