//! The `finlat` binary: outputs, formats and exit codes.

mod common;

use std::process::Command;

use common::*;
use finlat::quotient::operator_family;
use finlat::text::{load_monop, load_poset};
use finlat::{upset_lattice, Caps};

struct Outcome {
    code: i32,
    stdout: String,
    stderr: String,
}

fn finlat(args: &[&str]) -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_finlat"))
        .args(args)
        .current_dir(fixture(""))
        .output()
        .expect("binary runs");
    Outcome {
        code: out.status.code().expect("exited normally"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

#[test]
fn upsets_lists_all_five() {
    let o = finlat(&["upsets", "wedge.poset"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert_eq!(o.stdout.lines().collect::<Vec<_>>(), vec!["{}", "{b}", "{a,b}", "{b,c}", "{a,b,c}"]);
}

#[test]
fn upsets_formats() {
    let tab = finlat(&["upsets", "wedge.poset", "--format", "tabular"]);
    assert_eq!(tab.code, 0);
    assert_eq!(tab.stdout.lines().next(), Some("0\t0\t{}"));
    assert_eq!(tab.stdout.lines().count(), 5);
    let dot = finlat(&["--dot", "upsets", "wedge.poset"]);
    assert_eq!(dot.code, 0);
    assert!(dot.stdout.starts_with("digraph"));
    assert!(dot.stdout.contains("rankdir=BT"));
    assert_eq!(dot.stdout.matches("->").count(), 5);
}

#[test]
fn check_reports_predicates() {
    let o = finlat(&["check", "stem_square.lattice"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(o.stdout.contains("meet-irreducibles: {0,a,c}"));
    assert!(o.stdout.contains("distributive: yes"));
    assert!(o.stdout.contains("graded chains: yes: every maximal chain has 4 elements"));
    assert!(o.stdout.contains("representable: yes"));

    let m3 = finlat(&["check", "m3.lattice"]);
    assert_eq!(m3.code, 0);
    assert!(m3.stdout.contains("distributive: no"));
    assert!(m3.stdout.contains("condition (M): no"));
    assert!(m3.stdout.contains("representable: no"));

    let tab = finlat(&["check", "m3.lattice", "--format", "tabular"]);
    assert!(tab.stdout.lines().any(|l| l.starts_with("distributive\tno")));
}

#[test]
fn birkhoff_verdicts() {
    let o = finlat(&["birkhoff", "stem_square.lattice"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(o.stdout.contains("M(L) = {0,a,c}"));
    assert!(o.stdout.contains("f(d) = {a,c}"));
    assert!(o.stdout.contains("f(1) = {}"));
    assert!(o.stdout.contains("representable"));

    let m3 = finlat(&["birkhoff", "m3.lattice"]);
    assert_eq!(m3.code, 3);
    assert!(m3.stdout.contains("not representable"));
}

#[test]
fn cuts_report() {
    let o = finlat(&["cuts", "wedge_mu.fuzzy"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(o.stdout.contains("cut {a,b}: {a,b}"));
    assert!(o.stdout.contains("cuts are all up-sets: yes"));
    assert!(o.stdout.contains("values meet-irreducible in L^mu: yes"));

    let top = finlat(&["cuts", "ac_top.fuzzy"]);
    assert_eq!(top.code, 0, "{}", top.stderr);
    assert!(top.stdout.contains("cuts are all up-sets: no"));
    assert!(top.stdout.contains("values meet-irreducible in L^mu: not applicable"));
}

#[test]
fn embed_decisions() {
    let no = finlat(&["embed", "square.lattice", "stem_square.lattice"]);
    assert_eq!(no.code, 3, "{}", no.stderr);
    assert!(no.stdout.starts_with("DoesNotEmbed"));
    assert!(no.stdout.contains("sublattice without bounds: yes (1->1 a->a c->c d->d)"));

    let yes = finlat(&["embed", "chain4.lattice", "wedge_upsets.lattice"]);
    assert_eq!(yes.code, 0, "{}", yes.stderr);
    assert!(yes.stdout.starts_with("Embeds"));
    assert!(yes.stdout.contains("quotient M(L)/G: 3 classes"));
}

#[test]
fn embed_writes_a_loadable_operator() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("witness.monop");
    let o = finlat(&["embed", "chain4.lattice", "wedge_upsets.lattice", "--out", out.to_str().unwrap()]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let file = load_monop(&out).unwrap();
    let carrier = load_poset(&dir.path().join("witness.poset")).unwrap();
    assert!(file.operator.carrier().same_order(&carrier));
    // the written operator's family is a 4-chain of up-sets
    let fam = operator_family(&file.operator, &Caps::default()).unwrap();
    assert_eq!(fam.len(), 4);
    assert!(fam.windows(2).all(|w| w[0].is_subset(w[1])));
}

#[test]
fn hql_counts_classes() {
    let o = finlat(&["hql", "wedge_upsets.lattice"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(o.stdout.contains("7 classes"));
    assert!(o.stdout.contains("digraph"));

    let m3 = finlat(&["hql", "m3.lattice"]);
    assert_eq!(m3.code, 3);
    assert!(m3.stderr.contains("distributive"));

    let forced = finlat(&["hql", "m3.lattice", "--force"]);
    assert_eq!(forced.code, 0, "{}", forced.stderr);
    assert!(forced.stdout.contains("29 classes"));
}

#[test]
fn gen_counts_and_files() {
    let o = finlat(&["gen", "4"]);
    assert_eq!(o.code, 0);
    assert_eq!(o.stdout.matches("poset ").count(), 16);

    let dir = tempfile::tempdir().unwrap();
    let g = finlat(&["gen", "3", "--out-dir", dir.path().to_str().unwrap()]);
    assert_eq!(g.code, 0, "{}", g.stderr);
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(files.len(), 5);
    for f in files {
        let p = load_poset(&f.unwrap().path()).unwrap();
        assert_eq!(p.len(), 3);
        upset_lattice(&p, &Caps::default()).unwrap();
    }

    let a = finlat(&["gen", "5", "--random", "--seed", "7"]);
    let b = finlat(&["gen", "5", "--random", "--seed", "7"]);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn error_exit_codes() {
    let v = finlat(&["check", "v_shape.lattice"]);
    assert_eq!(v.code, 1);
    assert!(v.stderr.contains("lower bound") || v.stderr.contains("upper bound"));

    let cycle = finlat(&["upsets", "cycle.poset"]);
    assert_eq!(cycle.code, 2);
    assert!(cycle.stderr.contains("cycle"));

    let missing = finlat(&["upsets", "no_such_file.poset"]);
    assert_eq!(missing.code, 2);

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.poset");
    std::fs::write(&bad, "poset P\nelems a b\nle a\n").unwrap();
    let parse = finlat(&["upsets", bad.to_str().unwrap()]);
    assert_eq!(parse.code, 2);
    assert!(parse.stderr.contains("line 3"), "{}", parse.stderr);

    let cap = finlat(&["--cap-size", "2", "upsets", "wedge.poset"]);
    assert_eq!(cap.code, 4);

    let usage = finlat(&["nonsense"]);
    assert_eq!(usage.code, 2);
}

#[test]
fn set_literals_survive_the_loader() {
    let x = fixture("wedge_upsets.lattice");
    let l = finlat::text::load_lattice(&x).unwrap();
    let fx = upset_lattice(&wedge(), &Caps::default()).unwrap().lattice;
    assert!(finlat::lattice_isomorphism(&l, &fx).is_some());
    assert_eq!(l.element_name(l.bottom()), "{a,b,c}");
}
