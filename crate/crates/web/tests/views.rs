use bigcycle_web::*;

#[test]
fn generated_view_is_consistent() {
    let v = generate_view(20, 3, 4).unwrap();
    assert_eq!((v.n, v.k), (40, 3));
    assert_eq!(v.edges.len(), 60);
    assert_eq!(v.cycles.iter().map(Vec::len).sum::<usize>(), 40);
    assert_eq!(v.tree.len() + 1, v.cycles.len());
    assert_eq!(v.edge_count, 40 + 2 * v.tree.len());
    assert!(v.ok);
    for [a, b] in &v.edges {
        assert_ne!(v.sides[*a as usize], v.sides[*b as usize]);
    }
}

#[test]
fn k_regular_view() {
    let v = generate_view(12, 5, 1).unwrap();
    assert_eq!(v.k, 5);
    assert_eq!(v.edges.len(), 60);
}

#[test]
fn edge_list_and_verify() {
    let k33 = "6 9\n0 3\n0 4\n0 5\n1 3\n1 4\n1 5\n2 3\n2 4\n2 5\n";
    let v = edge_list_view(k33, 0).unwrap();
    assert_eq!(v.cycles.len(), 1);
    let ok = verify_view(k33, &v.multigraph).unwrap();
    assert!(ok.valid);
    let bad = verify_view(k33, "6 6\n0 1\n0 3\n1 4\n1 5\n2 3\n2 4\n").unwrap();
    assert!(!bad.valid);
    assert!(bad.violations.iter().any(|s| s.starts_with("(a)")));
    assert!(edge_list_view("4 1\n0 4", 0).unwrap_err().contains("line 2"));
}

#[test]
fn exports_serialize() {
    let text = generate_and_solve(10, 3, 2).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["n"], 20);
    let text = verify(v["graph"].as_str().unwrap(), v["multigraph"].as_str().unwrap()).unwrap();
    assert!(text.contains("\"valid\":true"));
}
