use tetra_modular::{run_identity, CheckOptions, Identity, QDilogContext};

#[test]
fn all_function_identities_pass_in_both_regimes() {
    for ctx in [QDilogContext::default_strong(), QDilogContext::default_product()] {
        for id in Identity::ALL {
            if id == Identity::Unitarity && !ctx.is_strong_coupling() {
                assert!(run_identity(&ctx, id, &CheckOptions::default()).is_err());
                continue;
            }
            if matches!(id, Identity::KernelSymmetry | Identity::KernelConvergence | Identity::KernelRelation) {
                continue;
            }
            let r = run_identity(&ctx, id, &CheckOptions::default()).unwrap();
            assert!(r.pass, "{r:?}");
            assert!(r.samples >= 4, "{r:?}");
        }
    }
}

#[test]
fn names_round_trip() {
    for id in Identity::ALL {
        assert_eq!(id.name().parse::<Identity>().unwrap(), id);
    }
    assert!("nonsense".parse::<Identity>().is_err());
}

#[test]
fn impossible_tolerance_fails() {
    let ctx = QDilogContext::default_strong();
    let opts = CheckOptions { tolerance: Some(0.0), ..CheckOptions::default() };
    let r = run_identity(&ctx, Identity::FourierChiSquared, &opts).unwrap();
    assert!(!r.pass);
    assert!(r.max_residual > 0.0);
}

#[test]
fn report_serializes() {
    let ctx = QDilogContext::default_strong();
    let r = run_identity(&ctx, Identity::ChiSwap, &CheckOptions::default()).unwrap();
    let json = serde_json::to_value(&r).unwrap();
    for key in ["identity", "samples", "max_residual", "pass"] {
        assert!(json.get(key).is_some(), "{key}");
    }
}
