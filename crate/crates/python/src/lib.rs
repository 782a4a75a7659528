//! Python bindings for the analyser: configuration, class files, ASLT trees
//! and whole-project analysis runs.

use std::path::PathBuf;

use pyo3::exceptions::{PyOSError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyBytes, PyDict, PyList};

use aslt_analyser::aslt;
use aslt_analyser::classfile;
use aslt_analyser::cli;
use aslt_analyser::config;

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn os_error(e: impl std::fmt::Display) -> PyErr {
    PyOSError::new_err(e.to_string())
}

fn json_to_py(py: Python<'_>, value: &serde_json::Value) -> PyResult<Py<PyAny>> {
    use serde_json::Value;
    Ok(match value {
        Value::Null => py.None(),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any().unbind(),
        Value::Number(n) => match n.as_i64() {
            Some(i) => i.into_pyobject(py)?.into_any().unbind(),
            None => n
                .as_f64()
                .unwrap_or_default()
                .into_pyobject(py)?
                .into_any()
                .unbind(),
        },
        Value::String(s) => s.into_pyobject(py)?.into_any().unbind(),
        Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(json_to_py(py, item)?)?;
            }
            list.into_any().unbind()
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, v) in map {
                dict.set_item(k, json_to_py(py, v)?)?;
            }
            dict.into_any().unbind()
        }
    })
}

#[pyclass(name = "ProjectConfig", module = "pyaslt", from_py_object)]
#[derive(Clone)]
struct PyProjectConfig {
    inner: config::ProjectConfig,
}

#[pymethods]
impl PyProjectConfig {
    #[new]
    fn new(path_to_application: PathBuf) -> Self {
        Self {
            inner: config::ProjectConfig::new(path_to_application),
        }
    }

    /// Parses `constants.properties` text.
    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        let kv = config::parse_properties(text).map_err(value_error)?;
        let inner = config::load_config(&kv).map_err(value_error)?;
        Ok(Self { inner })
    }

    /// Loads a properties file; a relative `PathToApplication` is taken
    /// relative to the file's directory.
    #[staticmethod]
    fn from_file(path: PathBuf) -> PyResult<Self> {
        let loaded = config::load_config_file(&path).map_err(value_error)?;
        Ok(Self {
            inner: loaded.config,
        })
    }

    #[getter]
    fn path_to_application(&self) -> PathBuf {
        self.inner.path_to_application.clone()
    }

    #[getter]
    fn aslt_file_extension(&self) -> &str {
        &self.inner.aslt_file_extension
    }

    #[getter]
    fn class_file_extension(&self) -> &str {
        &self.inner.class_file_extension
    }

    #[getter]
    fn debug_level(&self) -> u8 {
        self.inner.debug_level.as_number()
    }

    #[setter]
    fn set_debug_level(&mut self, level: u8) -> PyResult<()> {
        self.inner.debug_level = config::DebugLevel::from_number(level).ok_or_else(|| {
            PyValueError::new_err(format!("debug level {level} is not 0, 1 or 2"))
        })?;
        Ok(())
    }

    #[getter]
    fn node_kind_names<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let dict = PyDict::new(py);
        for (key, name) in self.inner.node_kind_names.iter() {
            dict.set_item(key, name)?;
        }
        Ok(dict)
    }

    fn render(&self) -> String {
        self.inner.render()
    }

    fn __repr__(&self) -> String {
        format!(
            "ProjectConfig(path_to_application={:?}, debug_level={})",
            self.inner.path_to_application.display().to_string(),
            self.inner.debug_level.as_number()
        )
    }
}

#[pyclass(name = "ClassInfo", module = "pyaslt", from_py_object)]
#[derive(Clone)]
struct PyClassInfo {
    inner: classfile::ClassInfo,
}

#[pymethods]
impl PyClassInfo {
    #[staticmethod]
    fn from_bytes(data: &[u8]) -> PyResult<Self> {
        let inner = classfile::parse_classfile(data).map_err(value_error)?;
        Ok(Self { inner })
    }

    fn to_bytes<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyBytes>> {
        let bytes = classfile::emit_classfile(&self.inner).map_err(value_error)?;
        Ok(PyBytes::new(py, &bytes))
    }

    #[getter]
    fn qualified_name(&self) -> &str {
        &self.inner.qualified_name
    }

    #[getter]
    fn superclass_name(&self) -> Option<&str> {
        self.inner.superclass_name.as_deref()
    }

    #[getter]
    fn interface_names(&self) -> Vec<String> {
        self.inner.interface_names.clone()
    }

    #[getter]
    fn access_flags(&self) -> u16 {
        self.inner.access_flags
    }

    /// `(name, type)` pairs.
    #[getter]
    fn fields(&self) -> Vec<(String, String)> {
        self.inner
            .fields
            .iter()
            .map(|f| (f.name.clone(), f.type_name.to_string()))
            .collect()
    }

    /// `(name, parameter types, return type, descriptor)` tuples in
    /// declaration order.
    #[getter]
    fn methods(&self) -> Vec<(String, Vec<String>, String, String)> {
        self.inner
            .methods
            .iter()
            .map(|m| {
                let s = &m.signature;
                (
                    s.name.clone(),
                    s.parameter_types.iter().map(ToString::to_string).collect(),
                    s.return_type.to_string(),
                    s.descriptor(),
                )
            })
            .collect()
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!(
            "ClassInfo({:?}, {} methods)",
            self.inner.qualified_name,
            self.inner.methods.len()
        )
    }
}

#[pyclass(name = "AsltNode", module = "pyaslt", from_py_object)]
#[derive(Clone)]
struct PyAsltNode {
    inner: aslt::AsltNode,
}

#[pymethods]
impl PyAsltNode {
    #[getter]
    fn kind(&self) -> &'static str {
        self.inner.kind.as_str()
    }

    #[getter]
    fn attributes<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let dict = PyDict::new(py);
        for (k, v) in &self.inner.attributes {
            dict.set_item(k, v)?;
        }
        Ok(dict)
    }

    #[getter]
    fn children(&self) -> Vec<PyAsltNode> {
        self.inner
            .children
            .iter()
            .map(|c| PyAsltNode { inner: c.clone() })
            .collect()
    }

    /// `(start_line, start_column, end_line, end_column)`, or `None`.
    #[getter]
    fn span(&self) -> Option<(u32, u32, u32, u32)> {
        let s = &self.inner.span;
        (!s.is_unknown()).then_some((s.start.line, s.start.column, s.end.line, s.end.column))
    }

    fn node_count(&self) -> usize {
        self.inner.node_count()
    }

    fn same_structure(&self, other: &PyAsltNode) -> bool {
        self.inner.same_structure(&other.inner)
    }

    fn to_aslt(&self) -> String {
        aslt::write_aslt(&self.inner)
    }

    fn to_source(&self) -> PyResult<String> {
        aslt::print_source(&self.inner).map_err(value_error)
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!(
            "AsltNode({}, {} nodes)",
            self.inner.kind,
            self.inner.node_count()
        )
    }
}

#[pyclass(name = "AnalysisRun", module = "pyaslt")]
struct PyAnalysisRun {
    inner: cli::AnalysisRun,
}

#[pymethods]
impl PyAnalysisRun {
    #[getter]
    fn exit_code(&self) -> i32 {
        self.inner.exit_code
    }

    #[getter]
    fn class_infos(&self) -> Vec<PyClassInfo> {
        self.inner
            .class_infos
            .iter()
            .map(|c| PyClassInfo { inner: c.clone() })
            .collect()
    }

    #[getter]
    fn call_count(&self) -> usize {
        self.inner.call_sites.len()
    }

    /// Mismatch reports as dictionaries, in report order.
    #[getter]
    fn reports(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let value = serde_json::to_value(&self.inner.reports).map_err(value_error)?;
        json_to_py(py, &value)
    }

    #[getter]
    fn diagnostics(&self) -> Vec<String> {
        self.inner
            .diagnostics
            .iter()
            .map(ToString::to_string)
            .collect()
    }

    fn text(&self) -> String {
        cli::show_all_errors(&self.inner)
    }

    fn json(&self) -> String {
        cli::render_json(&self.inner)
    }
}

#[pyfunction]
fn parse_source(source: &str, file: &str) -> PyResult<PyAsltNode> {
    let inner = aslt::parse_source(source, file).map_err(value_error)?;
    Ok(PyAsltNode { inner })
}

#[pyfunction]
fn read_aslt(text: &str) -> PyResult<PyAsltNode> {
    let inner = aslt::read_aslt(text).map_err(value_error)?;
    Ok(PyAsltNode { inner })
}

#[pyfunction]
#[pyo3(signature = (config, widening = false, check_constructors = true))]
fn run_analysis(
    config: &PyProjectConfig,
    widening: bool,
    check_constructors: bool,
) -> PyAnalysisRun {
    let options = cli::RunOptions {
        widening,
        check_constructors,
    };
    PyAnalysisRun {
        inner: cli::run_analysis(&config.inner, options),
    }
}

/// Writes the three-class testbed and its `constants.properties` into
/// `directory`; returns the written paths.
#[pyfunction]
fn gen_testbed(directory: PathBuf) -> PyResult<Vec<PathBuf>> {
    cli::gen_testbed(&directory).map_err(os_error)
}

#[pyfunction]
fn inject_parameter_fault(directory: PathBuf) -> PyResult<()> {
    cli::inject_parameter_fault(&directory).map_err(os_error)
}

#[pymodule]
fn pyaslt(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyProjectConfig>()?;
    m.add_class::<PyClassInfo>()?;
    m.add_class::<PyAsltNode>()?;
    m.add_class::<PyAnalysisRun>()?;
    m.add_function(wrap_pyfunction!(parse_source, m)?)?;
    m.add_function(wrap_pyfunction!(read_aslt, m)?)?;
    m.add_function(wrap_pyfunction!(run_analysis, m)?)?;
    m.add_function(wrap_pyfunction!(gen_testbed, m)?)?;
    m.add_function(wrap_pyfunction!(inject_parameter_fault, m)?)?;
    Ok(())
}
