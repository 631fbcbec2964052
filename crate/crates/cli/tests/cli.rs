use eh_certify::graph::io;
use eh_certify::oracle::verify_certificate;
use eh_certify::{Certificate, CertificateKind, Graph};
use eh_certify_cli::{run, Output, EXIT_FAILURE, EXIT_OK, EXIT_USAGE};
use std::fs;
use std::path::{Path, PathBuf};

struct Scratch(PathBuf);

impl Scratch {
    fn new(tag: &str) -> Self {
        let dir = std::env::temp_dir().join(format!("eh-certify-cli-{tag}-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        Scratch(dir)
    }

    fn file(&self, name: &str) -> String {
        self.0.join(name).to_str().unwrap().to_owned()
    }
}

impl Drop for Scratch {
    fn drop(&mut self) {
        let _ = fs::remove_dir_all(&self.0);
    }
}

fn cli(args: &[&str]) -> Output {
    run(std::iter::once("eh-certify").chain(args.iter().copied()))
}

fn load(path: &str) -> Graph {
    io::parse_graph_auto(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn two_cliques_give_anti_pair() {
    let s = Scratch::new("cliques");
    let g = s.file("g.txt");
    assert_eq!(cli(&["gen", "two_cliques", "--n", "40", "--out", &g]).code, EXIT_OK);
    let out = cli(&["dichotomy", "--input", &g, "--shape", "2,1,1"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    let cert: Certificate = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(cert.kind, CertificateKind::AntiPair);
    assert_eq!(cert.min_side(), 20);
}

#[test]
fn planted_pattern_is_found() {
    let s = Scratch::new("planted");
    let g = s.file("g.txt");
    assert_eq!(cli(&["gen", "planted_caterpillar", "--n", "30", "--p", "1/20", "--shape", "2,2,1", "--seed", "4", "--out", &g]).code, EXIT_OK);
    let out = cli(&["dichotomy", "--input", &g, "--shape", "2,2,1", "--budget", "1000000"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    let cert: Certificate = serde_json::from_str(&out.stdout).unwrap();
    assert!(matches!(cert.kind, CertificateKind::InducedPattern | CertificateKind::AntiPair));
    assert!(verify_certificate(&load(&g), &cert).unwrap().is_valid());

    let cycle = s.file("c.txt");
    fs::write(&cycle, io::write_edge_list(&Graph::cycle(12))).unwrap();
    let out = cli(&["dichotomy", "--input", &cycle, "--shape", "1,1,3"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    let cert: Certificate = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(cert.kind, CertificateKind::InducedPattern);
}

#[test]
fn truncated_edge_list_cites_line() {
    let s = Scratch::new("truncated");
    let g = s.file("g.txt");
    fs::write(&g, "5 4\n0 1\n1 2\n").unwrap();
    let out = cli(&["dichotomy", "--input", &g, "--shape", "1,1,1"]);
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stderr.contains("line 4"), "{}", out.stderr);
}

#[test]
fn pattern_file_must_be_a_caterpillar() {
    let s = Scratch::new("pattern");
    let (g, p) = (s.file("g.txt"), s.file("p.txt"));
    fs::write(&g, io::write_edge_list(&Graph::cycle(8))).unwrap();
    fs::write(&p, io::write_edge_list(&Graph::cycle(4))).unwrap();
    assert_eq!(cli(&["dichotomy", "--input", &g, "--pattern", &p]).code, EXIT_USAGE);
    fs::write(&p, io::write_edge_list(&Graph::path(3))).unwrap();
    assert_eq!(cli(&["dichotomy", "--input", &g, "--pattern", &p]).code, EXIT_OK);
    assert_eq!(cli(&["dichotomy", "--input", &g]).code, EXIT_USAGE);
}

#[test]
fn guarantee_mode_rejects_inflated_eps() {
    let s = Scratch::new("guarantee");
    let g = s.file("g.txt");
    fs::write(&g, io::write_edge_list(&Graph::cycle(8))).unwrap();
    assert_eq!(cli(&["dichotomy", "--input", &g, "--shape", "1,1,1", "--eps", "1/2", "--guarantee"]).code, EXIT_USAGE);
    assert_eq!(cli(&["dichotomy", "--input", &g, "--shape", "1,1,1", "--guarantee"]).code, EXIT_OK);
}

#[test]
fn gen_is_deterministic() {
    let s = Scratch::new("gen");
    let (a, b) = (s.file("a.txt"), s.file("b.txt"));
    for f in [&a, &b] {
        assert_eq!(cli(&["gen", "gnp", "--n", "100", "--p", "1/2", "--seed", "7", "--out", f]).code, EXIT_OK);
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_eq!(load(&a).n(), 100);
}

#[test]
fn edge_list_round_trip() {
    let out = cli(&["gen", "gnp", "--n", "40", "--p", "1/3", "--seed", "1"]);
    let g = io::parse_edge_list(&out.stdout).unwrap();
    assert_eq!(io::write_edge_list(&g), out.stdout);
    let out6 = cli(&["gen", "gnp", "--n", "40", "--p", "1/3", "--seed", "1", "--format", "graph6"]);
    assert_eq!(io::parse_graph6(out6.stdout.trim()).unwrap(), g);
}

#[test]
fn bounded_degree_cap() {
    let out = cli(&["gen", "bounded_degree", "--n", "200", "--degree", "3", "--seed", "2"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(io::parse_edge_list(&out.stdout).unwrap().max_degree() <= 3);
    assert_eq!(cli(&["gen", "bounded_degree", "--n", "200"]).code, EXIT_USAGE);
    assert_eq!(cli(&["gen", "planted_bipartite_hole", "--n", "10", "--size", "6"]).code, EXIT_USAGE);
}

#[test]
fn sidecars_verify_and_tampering_is_reported() {
    let s = Scratch::new("verify");
    let g = s.file("g.txt");
    let sidecar = format!("{g}.cert.json");
    let out = cli(&["gen", "planted_caterpillar", "--n", "50", "--shape", "2,2,1", "--seed", "3", "--out", &g]);
    assert_eq!(out.code, EXIT_OK);
    let ok = cli(&["verify", "--input", &g, "--cert", &sidecar]);
    assert_eq!((ok.code, ok.stdout.as_str()), (EXIT_OK, "valid\n"));

    let cert: Certificate = serde_json::from_str(&fs::read_to_string(&sidecar).unwrap()).unwrap();
    let emb = cert.embedding.unwrap();
    let (u, v) = (emb.image(0), emb.image(1));
    let host = load(&g);
    let edges: Vec<_> = host.edges().filter(|&e| e != (u.min(v), u.max(v))).collect();
    let cut = s.file("cut.txt");
    fs::write(&cut, io::write_edge_list(&Graph::from_edges(host.n(), &edges).unwrap())).unwrap();
    let bad = cli(&["verify", "--input", &cut, "--cert", &sidecar]);
    assert_eq!(bad.code, EXIT_FAILURE);
    assert!(bad.stdout.contains(&format!("({},{})", u, v)), "{}", bad.stdout);

    let wrong = s.file("wrong.json");
    fs::write(&wrong, fs::read_to_string(&sidecar).unwrap().replace("induced_pattern", "induced_thing")).unwrap();
    assert_eq!(cli(&["verify", "--input", &g, "--cert", &wrong]).code, EXIT_USAGE);
}

#[test]
fn hole_sidecar_verifies() {
    let s = Scratch::new("hole");
    let (g, side) = (s.file("g.txt"), s.file("side.json"));
    let out = cli(&["gen", "planted_bipartite_hole", "--n", "60", "--size", "12", "--seed", "8", "--out", &g, "--sidecar", &side]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(cli(&["verify", "--input", &g, "--cert", &side]).code, EXIT_OK);
}

#[test]
fn constants_values() {
    let json = |shape: &str| -> serde_json::Value { serde_json::from_str(&cli(&["constants", "--shape", shape]).stdout).unwrap() };
    assert_eq!(json("1,0,0")["levels"][0]["alpha"], "1/270");
    assert_eq!(json("2,1,1")["levels"][1]["ell0"], 38);
    assert_eq!(json("3,1,1")["levels"][0]["ell0"], 5);
    let table = cli(&["constants", "--shape", "2,1,1", "--table"]).stdout;
    assert!(table.contains("ell\t38"));
    assert_eq!(cli(&["constants", "--shape", "1,9,1"]).code, EXIT_FAILURE);
}

#[test]
fn dot_exports() {
    let s = Scratch::new("dot");
    let (one, p4) = (s.file("one.txt"), s.file("p4.txt"));
    fs::write(&one, io::write_edge_list(&Graph::empty(1))).unwrap();
    fs::write(&p4, io::write_edge_list(&Graph::path(4))).unwrap();
    assert_eq!(cli(&["export-dot", "--input", &one]).stdout, "graph G {\n  0;\n}\n");
    let dot = cli(&["export-dot", "--input", &p4]).stdout;
    assert_eq!(dot.matches(" -- ").count(), 3);

    let bad = s.file("bad.json");
    fs::write(&bad, "{\"nodes\": 3}").unwrap();
    assert_eq!(cli(&["export-dot", "--input", &p4, "--structure", &bad]).code, EXIT_USAGE);
    assert_eq!(cli(&["export-dot"]).code, EXIT_USAGE);
}

// Overridden constants on a dense graph make the pipeline reach junior
// search, whose trace lines carry the ferns built so far.
#[test]
fn trace_ferns_render_one_cluster_per_bud() {
    let s = Scratch::new("trace");
    let (g, trace) = (s.file("g.txt"), s.file("trace.jsonl"));
    assert_eq!(cli(&["gen", "gnp", "--n", "192", "--seed", "7", "--out", &g]).code, EXIT_OK);
    let out = cli(&["dichotomy", "--input", &g, "--shape", "1,0,0", "--budget", "0", "--ell", "3", "--eps", "3", "--trace", &trace]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    let last: serde_json::Value = serde_json::from_str(fs::read_to_string(&trace).unwrap().lines().last().unwrap()).unwrap();
    let buds: usize = last["ferns"].as_object().unwrap().values().flat_map(|f| f.as_array().unwrap()).map(|f| f["nodes"].as_array().unwrap().len()).sum();
    assert!(buds > 0);

    let fern_file = s.file("fern.json");
    let family = last["ferns"].as_object().unwrap().values().find(|f| !f.as_array().unwrap().is_empty()).unwrap();
    fs::write(&fern_file, family[0].to_string()).unwrap();
    let fern_dot = cli(&["export-dot", "--input", &g, "--structure", &fern_file]);
    assert_eq!(fern_dot.code, EXIT_OK);
    assert_eq!(fern_dot.stdout.matches("subgraph cluster_").count(), family[0]["nodes"].as_array().unwrap().len());

    let state_dot = cli(&["export-dot", "--structure", &trace]);
    assert_eq!(state_dot.code, EXIT_OK);
    assert_eq!(state_dot.stdout.matches("subgraph cluster_").count(), buds);
}

#[test]
fn verbose_reports_stage() {
    let s = Scratch::new("verbose");
    let g = s.file("g.txt");
    fs::write(&g, io::write_edge_list(&Graph::cycle(9))).unwrap();
    let out = cli(&["dichotomy", "--input", &g, "--shape", "1,1,2", "-v"]);
    assert_eq!(out.code, EXIT_OK);
    let report: serde_json::Value = serde_json::from_str(out.stderr.lines().last().unwrap()).unwrap();
    assert_eq!(report["verified"], true);
    assert_eq!(report["stage_reached"], "sparsify");
}

#[test]
fn binary_exit_codes() {
    let bin = Path::new(env!("CARGO_BIN_EXE_eh-certify"));
    let status = std::process::Command::new(bin).args(["constants", "--shape", "1,0,0"]).output().unwrap();
    assert_eq!(status.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8_lossy(&status.stdout).contains("1/270"));
    let status = std::process::Command::new(bin).args(["nope"]).output().unwrap();
    assert_eq!(status.status.code(), Some(EXIT_USAGE));
}
