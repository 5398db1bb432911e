mod common;

use common::*;
use kappa_lab::catalog::{self, Payload};
use kappa_lab::format::{self, FormatError};
use kappa_lab::fusion::verify_fusion;
use kappa_lab::modulecat::regular_module;
use kappa_lab::roundtrip::DaggerModuleFunctorData;
use kappa_lab::{Fusion64, Tol};

fn fib_text() -> String {
    format::fusion_to_string(&fib())
}

#[test]
fn every_entry_round_trips_byte_for_byte() {
    for (name, _) in catalog::list() {
        let payload = catalog::builtin::<f64>(&name).unwrap().payload;
        let text = format::payload_to_string(&payload);
        let again = match &payload {
            Payload::Fusion(_) => {
                format::fusion_to_string(&format::fusion_from_str::<f64>(&text).unwrap())
            }
            Payload::Module(_) => {
                format::module_to_string(&format::module_from_str::<f64>(&text).unwrap())
            }
            Payload::Central(_) => {
                format::central_to_string(&format::central_from_str::<f64>(&text).unwrap())
            }
        };
        assert_eq!(text, again, "{name}");
    }
}

#[test]
fn loaded_fibonacci_verifies_identically() {
    let fd: Fusion64 = format::fusion_from_str(&fib_text()).unwrap();
    let (a, b) = (
        verify_fusion(&fd, Tol::default()),
        verify_fusion(&fib(), Tol::default()),
    );
    assert!(a.overall);
    for (x, y) in a.checks.iter().zip(&b.checks) {
        assert_eq!((&x.id, x.residual), (&y.id, y.residual));
    }
}

#[test]
fn unknown_simple_is_named() {
    let text = fib_text().replacen(
        "[\"tau\",\"tau\",\"tau\",1]",
        "[\"tau\",\"tau\",\"phi\",1]",
        1,
    );
    match format::fusion_from_str::<f64>(&text).unwrap_err() {
        FormatError::UnknownSimple { name, .. } => assert_eq!(name, "phi"),
        e => panic!("unexpected {e}"),
    }
}

#[test]
fn unknown_field_is_rejected() {
    let text = fib_text().replacen('{', "{\n  \"colour\": 3,", 1);
    assert!(matches!(
        format::fusion_from_str::<f64>(&text),
        Err(FormatError::Parse(_))
    ));
}

#[test]
fn missing_evcoef_is_rejected() {
    let text = fib_text().replace(",\n    \"tau\": [1.272019649514069,0.0]", "");
    assert_ne!(text, fib_text());
    let err = format::fusion_from_str::<f64>(&text).unwrap_err();
    assert!(err.to_string().contains("evcoef"), "{err}");
}

#[test]
fn structural_violations_are_reported_at_load() {
    let text = fib_text().replacen("[\"tau\",\"tau\",\"1\",1]", "[\"tau\",\"tau\",\"1\",2]", 1);
    assert!(matches!(
        format::fusion_from_str::<f64>(&text),
        Err(FormatError::Invalid(_))
    ));
}

#[test]
fn numeric_axioms_are_left_to_verification() {
    let text = fib_text().replace("0.6180339887498948", "0.6190339887498948");
    let fd: Fusion64 = format::fusion_from_str(&text).unwrap();
    assert!(
        !verify_fusion(&fd, Tol::default())
            .check("pentagon")
            .unwrap()
            .pass
    );
}

#[test]
fn regular_module_refers_to_its_base_by_name() {
    let text = format::module_to_string(&regular_module(&fib()));
    assert!(text.contains("\"base\": \"fibonacci\""), "{text}");
}

#[test]
fn functor_file_round_trips() {
    let md = regular_module(&ising());
    let mut id = DaggerModuleFunctorData::identity(&md);
    id.name = "phase".into();
    let th = id.modulator.get_mut(&(1, 1)).unwrap();
    *th = th.scale(c(0.0, 1.0));
    let text = format::functor_to_string(&md, &md, &id);
    let (src, dst, back) = format::functor_from_str::<f64>(&text).unwrap();
    assert_eq!(src.name, md.name);
    assert_eq!(dst.name, md.name);
    assert_eq!(back.name, "phase");
    assert_eq!(back.obj, id.obj);
    for (k, m) in &id.modulator {
        assert!(dist(m, &back.modulator[k]) == 0.0);
    }
    assert_eq!(format::functor_to_string(&src, &dst, &back), text);
}
