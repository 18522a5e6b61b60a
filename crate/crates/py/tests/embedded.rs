//! The module driven from an embedded interpreter.

use pyo3::prelude::*;
use pyo3::types::PyDict;
use pyo3::wrap_pymodule;

fn with_module(code: &std::ffi::CStr) {
    Python::initialize();
    Python::attach(|py| {
        let locals = PyDict::new(py);
        locals.set_item("sv", wrap_pymodule!(pysovlab::pysovlab)(py)).unwrap();
        if let Err(e) = py.run(code, None, Some(&locals)) {
            e.print(py);
            panic!("python assertion failed");
        }
    });
}

#[test]
fn chain_specs_and_patterns() {
    with_module(
        c"
t1 = sv.ChainSpec.preset('t1')
assert (t1.n, t1.hilbert_dim(), t1.b_degree()) == (3, 64, 6)
assert sv.weyl_dim([2, 1, 0]) == len(sv.gt_patterns([2, 1, 0])) == 8
assert sv.ChainSpec([[1, 0]], ['0'], z=['2', '3'], w=['7']).to_json() == sv.ChainSpec.preset('t0').to_json()
try:
    sv.ChainSpec([[1, 0], [1, 0]], ['0', '1'])
    raise AssertionError('accepted a resonant chain')
except ValueError:
    pass
",
    );
}

#[test]
fn runs_suites_and_returns_a_report() {
    with_module(
        c"
cfg = sv.RunConfig.from_spec(sv.ChainSpec.preset('t0'), suites=['yangian', 'bethe'], seed=4)
r = cfg.run()
assert r['passed'] and r['config']['seed'] == 4
assert [s['suite'] for s in r['suites']] == ['yangian', 'bethe']
states = cfg.chain.bethe_states(precision=40)
assert len(states) == 2 and all(len(s['tau']) == 2 for s in states)
",
    );
}
