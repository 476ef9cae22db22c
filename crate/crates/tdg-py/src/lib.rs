//! Python bindings: load instances from JSON, solve them, evaluate
//! assignments, classify enmity structure, and generate hard instances from
//! source problems. Build the cdylib and import it as `tdg_py`.

use std::collections::BTreeMap;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use tdg_core::enmity::{enmity_structure, EnmityClass};
use tdg_core::io;
use tdg_core::rational::Rational;
use tdg_core::reductions::{
    gen_3partition, gen_clique, gen_equitable_partition, gen_independent_set,
    gen_unary_bin_packing, EquitableVariant, SourceProblem,
};
use tdg_core::solver::{
    solve_auto_with_threads, solve_brute_force_with_threads, solve_path_instar,
    solve_single_source,
};

fn value_error(e: impl ToString) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A topological distance game instance.
#[pyclass(frozen)]
struct Instance {
    inner: tdg_core::instance::Instance,
}

/// Result of a solver run.
#[pyclass(frozen, get_all)]
struct SolveOutcome {
    answer: bool,
    witness: Option<BTreeMap<String, usize>>,
    algorithm: String,
    nodes: u64,
}

#[pymethods]
impl SolveOutcome {
    fn __repr__(&self) -> String {
        format!(
            "SolveOutcome(answer={}, algorithm='{}', nodes={})",
            if self.answer { "True" } else { "False" },
            self.algorithm,
            self.nodes
        )
    }
}

/// Per-agent utilities (canonical rational strings) and the IR verdict.
#[pyclass(frozen, get_all)]
struct CheckOutcome {
    individually_rational: bool,
    agents: Vec<String>,
    utilities: Vec<String>,
}

/// Enmity-graph classification plus topology facts.
#[pyclass(frozen, get_all)]
struct Classification {
    classification: String,
    pivot: Option<String>,
    arc_count: usize,
    is_path: bool,
    component_diameters: Vec<usize>,
}

#[pymethods]
impl Instance {
    /// Parses and validates an instance document.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        io::parse_instance(text).map(|inner| Instance { inner }).map_err(value_error)
    }

    fn to_json(&self) -> String {
        io::serialize_instance(&self.inner)
    }

    #[getter]
    fn agents(&self) -> Vec<String> {
        self.inner.agent_names().to_vec()
    }

    #[getter]
    fn agent_count(&self) -> usize {
        self.inner.agent_count()
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        self.inner.topology().vertex_count()
    }

    #[getter]
    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.topology().edges().collect()
    }

    /// Decides individual rationality. `algorithm` is one of `auto`,
    /// `brute`, `single-source`, `path-instar`.
    #[pyo3(signature = (algorithm = "auto", threads = 1))]
    fn solve(&self, algorithm: &str, threads: usize) -> PyResult<SolveOutcome> {
        let result = match algorithm {
            "auto" => solve_auto_with_threads(&self.inner, threads).map_err(value_error)?,
            "brute" => {
                solve_brute_force_with_threads(&self.inner, threads).map_err(value_error)?
            }
            "single-source" => {
                let p = match enmity_structure(&self.inner).classification() {
                    EnmityClass::NoArcs => 0,
                    EnmityClass::SingleSource(p) => p,
                    other => {
                        return Err(value_error(format!(
                            "single-source needs a single enemy source, found {other:?}"
                        )))
                    }
                };
                solve_single_source(&self.inner, p).map_err(value_error)?
            }
            "path-instar" => {
                let structure = enmity_structure(&self.inner);
                let p = structure.arcs().first().map_or(0, |&(_, head)| head);
                solve_path_instar(&self.inner, p).map_err(value_error)?
            }
            other => return Err(value_error(format!("unknown algorithm {other:?}"))),
        };
        let witness = result.witness.map(|assignment| {
            self.inner
                .agent_names()
                .iter()
                .enumerate()
                .map(|(i, name)| (name.clone(), assignment.vertex_of(i)))
                .collect()
        });
        Ok(SolveOutcome {
            answer: result.answer,
            witness,
            algorithm: result.algorithm.tag().to_string(),
            nodes: result.nodes_explored,
        })
    }

    /// Evaluates an `{agent: vertex}` assignment.
    fn check(&self, assignment: BTreeMap<String, usize>) -> PyResult<CheckOutcome> {
        let text = serde_json::to_string(&assignment).map_err(value_error)?;
        let assignment = io::parse_assignment(&text, &self.inner).map_err(value_error)?;
        let report = tdg_core::instance::is_individually_rational(&self.inner, &assignment)
            .map_err(value_error)?;
        Ok(CheckOutcome {
            individually_rational: report.individually_rational,
            agents: self.inner.agent_names().to_vec(),
            utilities: report.utilities.iter().map(Rational::to_string).collect(),
        })
    }

    fn classify(&self) -> Classification {
        let structure = enmity_structure(&self.inner);
        let (classification, pivot) = match structure.classification() {
            EnmityClass::NoArcs => ("no-arcs", None),
            EnmityClass::SingleSource(p) => {
                ("single-source", Some(self.inner.agent_names()[p].clone()))
            }
            EnmityClass::SingleSink(p) => {
                ("single-sink", Some(self.inner.agent_names()[p].clone()))
            }
            EnmityClass::General => ("general", None),
        };
        let distances = self.inner.topology().shortest_distances();
        Classification {
            classification: classification.to_string(),
            pivot,
            arc_count: structure.arc_count(),
            is_path: self.inner.topology().is_path(),
            component_diameters: self
                .inner
                .topology()
                .components()
                .iter()
                .map(|component| distances.diameter_of(component))
                .collect(),
        }
    }

    fn __repr__(&self) -> String {
        format!(
            "Instance(vertices={}, agents={})",
            self.inner.topology().vertex_count(),
            self.inner.agent_count()
        )
    }
}

/// Builds a gadget instance from a source-problem document and returns the
/// generated document as JSON. `family` is one of `unary-bin-packing`,
/// `equitable-partition`, `3-partition`, `independent-set`, `clique`.
#[pyfunction]
#[pyo3(signature = (family, source_json, beta = "1", dff = None, variant = "bipartite", waive = false))]
fn generate(
    family: &str,
    source_json: &str,
    beta: &str,
    dff: Option<&str>,
    variant: &str,
    waive: bool,
) -> PyResult<String> {
    let source = io::parse_source(source_json).map_err(value_error)?;
    let beta: Rational = beta.parse().map_err(value_error)?;
    let dff = dff.map(io::parse_dff_spec).transpose().map_err(value_error)?;
    let default_dff = tdg_core::dff::DistanceFactorFunction::Reciprocal;
    let dff_or_default = dff.clone().unwrap_or(default_dff);
    let mismatch =
        || value_error(format!("source document kind does not match family {family:?}"));
    let gen = match (family, &source) {
        ("unary-bin-packing", SourceProblem::UnaryBinPacking(src)) => {
            gen_unary_bin_packing(src, &dff_or_default).map_err(value_error)?
        }
        ("equitable-partition", SourceProblem::EquitablePartition(src)) => {
            let variant = match variant {
                "bipartite" => EquitableVariant::Bipartite,
                "instar" => EquitableVariant::Instar,
                "path" => EquitableVariant::Path,
                other => return Err(value_error(format!("unknown variant {other:?}"))),
            };
            gen_equitable_partition(src, variant, dff.as_ref(), waive).map_err(value_error)?
        }
        ("3-partition", SourceProblem::ThreePartition(src)) => {
            gen_3partition(src, &dff_or_default).map_err(value_error)?
        }
        ("independent-set", SourceProblem::IndependentSet(src)) => {
            gen_independent_set(src, &beta, &dff_or_default).map_err(value_error)?
        }
        ("clique", SourceProblem::Clique(src)) => {
            gen_clique(src, &beta, &dff_or_default).map_err(value_error)?
        }
        ("unary-bin-packing" | "equitable-partition" | "3-partition" | "independent-set"
        | "clique", _) => return Err(mismatch()),
        (other, _) => return Err(value_error(format!("unknown family {other:?}"))),
    };
    Ok(io::serialize_generated(&gen))
}

#[pymodule]
fn tdg_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Instance>()?;
    m.add_class::<SolveOutcome>()?;
    m.add_class::<CheckOutcome>()?;
    m.add_class::<Classification>()?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    Ok(())
}
