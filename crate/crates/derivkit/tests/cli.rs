//! End-to-end tests of the command line through the library entry point.

use derivkit::cli::run;
use derivkit::formats;

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut argv = vec!["derivkit".to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(&argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn data(file: &str) -> String {
    format!("{}/data/{file}", env!("CARGO_MANIFEST_DIR"))
}

fn parse_json(s: &str) -> serde_json::Value {
    serde_json::from_str(s).expect("output should be valid JSON")
}

#[test]
fn lie_check_m2_reports_dimensions_and_verdict() {
    let (code, out, _) = invoke(&["lie-check", "--algebra", &data("m2.json"), "--json"]);
    assert_eq!(code, 0);
    let doc = parse_json(&out);
    assert_eq!(doc["tlie_dim"], 9);
    assert_eq!(doc["nlie_dim"], 9);
    assert_eq!(doc["verdict"], "Equal");
    assert_eq!(doc["semiideal"]["left_ideal_dim"], 12);
    assert_eq!(doc["semiideal"]["meet_matches_nlie"], true);
}

#[test]
fn lie_check_is_deterministic() {
    let first = invoke(&["lie-check", "--algebra", &data("d3.json"), "--json"]);
    let second = invoke(&["lie-check", "--algebra", &data("d3.json"), "--json"]);
    assert_eq!(first, second);
}

#[test]
fn poly_decompose_emits_replaying_certificate() {
    let (code, out, _) = invoke(&["poly", "decompose", "--input", "x^2*y - x*y^2", "--json"]);
    assert_eq!(code, 0);
    let doc = parse_json(&out);
    assert_eq!(doc["replay_exact"], true);
    // reload the certificate and replay it independently
    let cert = formats::certificate_from_doc(
        &serde_json::from_value(doc["certificate"].clone()).unwrap(),
    )
    .unwrap();
    let vars = derivkit_core::poly::doubled_vars(1);
    let p = formats::parse_poly_text("x^2*y - x*y^2", &vars).unwrap();
    let outcome = derivkit_core::poly::verify_certificate(
        &cert,
        &derivkit_core::poly::EvalContext::Polynomial,
        &derivkit_core::poly::CtxValue::Poly(p),
    )
    .unwrap();
    assert!(outcome.pass);
}

#[test]
fn poly_member_rejects_diagonal_nonvanishing() {
    let (code, out, _) = invoke(&["poly", "member", "--input", "x^2", "--json"]);
    assert_eq!(code, 0, "a non-member is a completed analysis");
    let doc = parse_json(&out);
    assert_eq!(doc["verdict"], "NonMember");
}

#[test]
fn poly_member_accepts_difference_multiples() {
    let (code, out, _) = invoke(&["poly", "member", "--input", "x^2 - y^2", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(parse_json(&out)["verdict"], "Member");
}

#[test]
fn poly_member_respects_degree_cap() {
    let (code, _, err) = invoke(&["poly", "member", "--input", "x^13 - y^13", "--json"]);
    assert_eq!(code, 3);
    assert!(err.contains("max-degree"));
    let (code2, out, _) = invoke(&[
        "poly", "member", "--input", "x^13 - y^13", "--max-degree", "13", "--json",
    ]);
    assert_eq!(code2, 0);
    assert_eq!(parse_json(&out)["verdict"], "Member");
}

#[test]
fn counterexample_p2_is_a_degree_two_refutation() {
    let (code, out, _) = invoke(&["counterexample", "p2", "--json"]);
    assert_eq!(code, 0);
    let doc = parse_json(&out);
    assert_eq!(doc["verdict"], "NonMember");
    assert_eq!(doc["degree"], 2);
}

#[test]
fn counterexample_f2_reports_the_member_verdict() {
    let (code, out, _) = invoke(&["counterexample", "f2", "--json"]);
    assert_eq!(code, 0);
    let doc = parse_json(&out);
    assert_eq!(doc["m_vanishes"], true);
    assert_eq!(doc["m_op_vanishes"], true);
    assert_eq!(doc["verdict"], "Member");
}

#[test]
fn malformed_polynomial_exits_two_with_location() {
    let (code, _, err) = invoke(&["poly", "member", "--input", "x + ?"]);
    assert_eq!(code, 2);
    assert!(err.contains("byte"), "{err}");
}

#[test]
fn unknown_variable_exits_two() {
    let (code, _, err) = invoke(&["poly", "member", "--input", "x1 - y1", "--k", "1"]);
    assert_eq!(code, 2);
    assert!(err.contains("unknown variable"), "{err}");
}

#[test]
fn noncanonical_rational_in_file_exits_two_with_suggestion() {
    let dir = std::env::temp_dir().join("derivkit-cli-test-noncanon");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.json");
    std::fs::write(&path, r#"[["2/4", "0"], ["0", "1"]]"#).unwrap();
    let (code, _, err) = invoke(&["expectation", "--n", "2", "--input", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("1/2"), "{err}");
}

#[test]
fn non_unital_algebra_exits_three() {
    let dir = std::env::temp_dir().join("derivkit-cli-test-nonunital");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("nonunital.json");
    std::fs::write(
        &path,
        r#"{"dim": 1, "labels": ["t"], "structure": []}"#,
    )
    .unwrap();
    let (code, _, err) = invoke(&["lie-check", "--algebra", path.to_str().unwrap()]);
    assert_eq!(code, 3);
    assert!(err.contains("unital"), "{err}");
}

#[test]
fn classify_lie_ideal_on_a_generator_file() {
    let dir = std::env::temp_dir().join("derivkit-cli-test-classify");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("gens.json");
    std::fs::write(&path, r#"[[["0", "1", "0"], ["0", "0", "0"], ["0", "0", "0"]]]"#).unwrap();
    let (code, out, _) = invoke(&["classify", "lie-ideal", "--n", "3", "--gens", path.to_str().unwrap(), "--json"]);
    assert_eq!(code, 0);
    assert_eq!(parse_json(&out)["class"], "Traceless");
}

#[test]
fn classify_dn_submodule_reports_positions_one_based() {
    let dir = std::env::temp_dir().join("derivkit-cli-test-dn");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("gens.json");
    // e12 + e21 + e11
    std::fs::write(&path, r#"[[["1", "1"], ["1", "0"]]]"#).unwrap();
    let (code, out, _) = invoke(&["classify", "dn-submodule", "--n", "2", "--gens", path.to_str().unwrap(), "--json"]);
    assert_eq!(code, 0);
    let doc = parse_json(&out);
    assert_eq!(doc["positions"], serde_json::json!([[1, 2], [2, 1]]));
    assert_eq!(doc["diagonal_part"]["basis"], serde_json::json!([["1", "0"]]));
}

#[test]
fn lambda_check_valid_and_invalid() {
    let dir = std::env::temp_dir().join("derivkit-cli-test-lambda");
    std::fs::create_dir_all(&dir).unwrap();
    let valid = dir.join("valid.json");
    std::fs::write(&valid, r#"[[1, 0, "1"], [0, 1, "-1"]]"#).unwrap();
    let (code, out, _) = invoke(&["lambda-check", "--matrix", valid.to_str().unwrap(), "--json"]);
    assert_eq!(code, 0);
    assert_eq!(parse_json(&out)["verdict"], "Valid");

    let invalid = dir.join("invalid.json");
    std::fs::write(&invalid, r#"[[1, 0, "1"]]"#).unwrap();
    let (code, out, _) = invoke(&["lambda-check", "--matrix", invalid.to_str().unwrap(), "--json"]);
    assert_eq!(code, 0, "an invalid matrix is still a completed analysis");
    let doc = parse_json(&out);
    assert_eq!(doc["verdict"], "Invalid");
    assert_eq!(doc["witness"]["ring"], "Q[t]/(t^3)");
    assert_eq!(doc["witness"]["escapes_line"], true);
}

#[test]
fn expectation_inline_matrix() {
    let (code, out, _) = invoke(&[
        "expectation", "--n", "2", "--input", r#"[["1", "0"], ["0", "0"]]"#, "--json",
    ]);
    assert_eq!(code, 0);
    let doc = parse_json(&out);
    assert_eq!(doc["equals_trace_projection"], true);
    assert_eq!(doc["average"], serde_json::json!([["1/2", "0"], ["0", "1/2"]]));
}

#[test]
fn expectation_factor_mode() {
    // a ⊗ b with a = diag(1, 2), b = e11: expectation is a·(tr b / 2) ⊗ 1
    let x = r#"[["1","0","0","0"],["0","0","0","0"],["0","0","2","0"],["0","0","0","0"]]"#;
    let (code, out, _) = invoke(&["expectation", "--n", "2", "--m", "2", "--input", x, "--json"]);
    assert_eq!(code, 0);
    let doc = parse_json(&out);
    assert_eq!(doc["idempotent"], true);
    assert_eq!(
        doc["expectation"],
        serde_json::json!([
            ["1/2", "0", "0", "0"],
            ["0", "1/2", "0", "0"],
            ["0", "0", "1", "0"],
            ["0", "0", "0", "1"]
        ])
    );
}

#[test]
fn verify_cert_round_trip_through_files() {
    let dir = std::env::temp_dir().join("derivkit-cli-test-cert");
    std::fs::create_dir_all(&dir).unwrap();
    let cert_path = dir.join("cert.json");
    let (code, out, _) = invoke(&["poly", "decompose", "--input", "x^2*y - x*y^2", "--json"]);
    assert_eq!(code, 0);
    let doc = parse_json(&out);
    std::fs::write(&cert_path, serde_json::to_string(&doc["certificate"]).unwrap()).unwrap();

    // polynomial context
    let (code, out, _) = invoke(&[
        "verify-cert", "--cert", cert_path.to_str().unwrap(),
        "--context", "poly", "--target", "x^2*y - x*y^2", "--json",
    ]);
    assert_eq!(code, 0);
    assert_eq!(parse_json(&out)["pass"], true);

    // wrong target fails but still exits 0
    let (code, out, _) = invoke(&[
        "verify-cert", "--cert", cert_path.to_str().unwrap(),
        "--context", "poly", "--target", "x - y", "--json",
    ]);
    assert_eq!(code, 0);
    assert_eq!(parse_json(&out)["pass"], false);

    // elementary context on M_3: the sandwich a²xa − axa²
    let a = r#"[["0","1","0"],["2","0","1"],["1","-1","3"]]"#;
    let a_mat = derivkit::formats::load_matrix(a).unwrap();
    let a2 = &a_mat * &a_mat;
    let op = &a2.kron(&a_mat.transpose()) - &a_mat.kron(&a2.transpose());
    let target_path = dir.join("target.json");
    std::fs::write(&target_path, derivkit::formats::store_matrix(&op)).unwrap();
    let (code, out, _) = invoke(&[
        "verify-cert", "--cert", cert_path.to_str().unwrap(),
        "--context", "elementary", "--n", "3",
        "--element", a,
        "--target", target_path.to_str().unwrap(),
        "--json",
    ]);
    assert_eq!(code, 0);
    assert_eq!(parse_json(&out)["pass"], true);
}

#[test]
fn verify_cert_tensor_context_via_algebra_file() {
    // transfer the square identity through Q[x]/(x²): certificate for
    // xy − x² evaluates to x⊗x in the tensor square
    let modulus = derivkit_core::poly::MultiPoly::from_one_var_coeffs(
        "x",
        &derivkit_core::rational::rvec(&[0, 0, 1]),
    );
    let t = {
        let mut v = vec![derivkit_core::rational::rat(0); 4];
        v[3] = derivkit_core::rational::rat(1); // index (1,1): x⊗x
        v
    };
    let cert = derivkit_core::poly::transfer_quotient(&modulus, &t).unwrap();
    let dir = std::env::temp_dir().join("derivkit-cli-test-tensor");
    std::fs::create_dir_all(&dir).unwrap();
    let cert_path = dir.join("cert.json");
    std::fs::write(&cert_path, formats::store_certificate(&cert)).unwrap();
    let (code, out, _) = invoke(&[
        "verify-cert", "--cert", cert_path.to_str().unwrap(),
        "--context", "tensor", "--algebra", &data("qx2.json"),
        "--generator", "x",
        "--target", r#"["0", "0", "0", "1"]"#,
        "--json",
    ]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(parse_json(&out)["pass"], true);
}

#[test]
fn data_files_are_canonical() {
    for file in ["m2.json", "m3.json", "d3.json", "d5.json", "qx2.json", "qx3.json", "qx3m2.json", "qx4mx.json", "ut2.json"] {
        let text = std::fs::read_to_string(data(file)).unwrap();
        let alg = formats::load_algebra(&text).unwrap();
        assert_eq!(formats::store_algebra(&alg), text, "{file} round trip");
    }
}

#[test]
fn missing_file_exits_two() {
    let (code, _, err) = invoke(&["lie-check", "--algebra", "/nonexistent/alg.json"]);
    assert_eq!(code, 2);
    assert!(!err.is_empty());
}

#[test]
fn usage_error_exits_two() {
    let (code, _, _) = invoke(&["frobnicate"]);
    assert_eq!(code, 2);
}
