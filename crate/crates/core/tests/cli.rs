use bmt::cli::{run, Outcome};

fn data(name: &str) -> String {
    format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn bmt(args: &[&str], stdin: &str) -> Outcome {
    let argv = std::iter::once("bmt").chain(args.iter().copied());
    run(argv, &mut stdin.as_bytes())
}

#[test]
fn b3_example_checks() {
    let out = bmt(&["check-delta2", &data("b3_full_twist.fac")], "");
    assert_eq!(out.code, 0, "{out:?}");
    assert!(out.stdout.starts_with("true\ndegree 6 target 6"));
}

#[test]
fn monodromy_pipes_into_check() {
    let mono = bmt(&["monodromy", &data("three_generic.arr")], "");
    assert_eq!(mono.code, 0, "{mono:?}");
    let check = bmt(&["check-delta2", "-"], &mono.stdout);
    assert_eq!(check.code, 0, "{check:?}");
    let expanded = bmt(&["monodromy", "--expand-blocks", &data("concurrent4.arr")], "");
    assert_eq!(bmt(&["check-delta2", "-"], &expanded.stdout).code, 0);
    assert!(!expanded.stdout.contains("full"));
    let blocks = bmt(&["monodromy", &data("concurrent4.arr")], "");
    assert!(blocks.stdout.contains("exp= full"));
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["monodromy", "CONC"],
        vec!["regenerate", "GEN"],
        vec!["invariants", "B3", "--seed", "5"],
        vec!["orbit", "B3", "--budget", "300"],
    ] {
        let args: Vec<String> = args
            .iter()
            .map(|a| match *a {
                "CONC" => data("concurrent4.arr"),
                "B3" => data("b3_full_twist.fac"),
                "GEN" => data("generic4.fac"),
                _ => a.to_string(),
            })
            .collect();
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let a = bmt(&args, "");
        assert_eq!(a.code, 0, "{a:?}");
        assert_eq!(a, bmt(&args, ""));
    }
}

#[test]
fn hurwitz_equivalence_verdicts() {
    let b3 = data("b3_full_twist.fac");
    let same = bmt(&["hurwitz-equiv", &b3, &b3], "");
    assert_eq!((same.code, same.stdout.as_str()), (0, "EQUIVALENT\nmoves 0\n\n"));
    let f = bmt::Factorization::parse_text(&std::fs::read_to_string(&b3).unwrap()).unwrap();
    let moved = f.hurwitz_move(2).unwrap().hurwitz_move_inverse(4).unwrap().to_text();
    let out = bmt(&["hurwitz-equiv", &b3, "-"], &moved);
    assert_eq!(out.code, 0, "{out:?}");
    assert!(out.stdout.starts_with("EQUIVALENT\nmoves 2\n"), "{out:?}");
    let nodes = "strands 3\nfactors 3\nconj= ; base= 1 2 ; exp= 2\nconj= ; base= 1 3 ; exp= 2\nconj= ; base= 2 3 ; exp= 2\n";
    let out = bmt(&["hurwitz-equiv", &b3, "-", "--budget", "1000000"], nodes);
    assert_eq!(out.code, 1);
    assert!(out.stdout.starts_with("NOT_EQUIVALENT\nwitness length"));
    let swapped = "strands 3\nfactors 6\nconj= ; base= 2 3 ; exp= 1\nconj= ; base= 1 2 ; exp= 1\nconj= ; base= 2 3 ; exp= 1\nconj= ; base= 1 2 ; exp= 1\nconj= ; base= 2 3 ; exp= 1\nconj= ; base= 1 2 ; exp= 1\n";
    let out = bmt(&["hurwitz-equiv", &b3, "-"], swapped);
    assert_eq!(out.code, 0, "{out:?}");
}

#[test]
fn inconclusive_search_exits_2() {
    // A long scramble with a tiny budget cannot be resolved.
    let b3 = data("b3_full_twist.fac");
    let f = bmt::Factorization::parse_text(&std::fs::read_to_string(&b3).unwrap()).unwrap();
    let g = f.hurwitz_move(1).unwrap().hurwitz_move(3).unwrap().hurwitz_move(5).unwrap().hurwitz_move_inverse(2).unwrap();
    let out = bmt(&["hurwitz-equiv", &b3, "-", "--budget", "3"], &g.to_text());
    assert_eq!(out.code, 2, "{out:?}");
    assert!(out.stdout.starts_with("INCONCLUSIVE"));
}

#[test]
fn word_commands() {
    // σ1σ2σ1σ2⁻¹ = σ2σ1, a single simple braid.
    let out = bmt(&["normal-form", "-"], "strands 3\ns1 s2 s1 S2\n");
    assert_eq!(out.stdout, "strands 3\ndelta 0\nfactor 3 1 2\n");
    let out = bmt(&["normal-form", "-"], "strands 3\nS1 S2 S1\n");
    assert_eq!(out.stdout, "strands 3\ndelta -1\n");
    let out = bmt(&["equal", &data("braid.txt"), "-"], "strands 4\ns1 s2 S1 s3 s3 S2\n");
    assert_eq!((out.code, out.stdout.as_str()), (0, "true\n"));
    let out = bmt(&["equal", &data("braid.txt"), "-"], "strands 4\ns1\n");
    assert_eq!((out.code, out.stdout.as_str()), (1, "false\n"));
}

#[test]
fn regeneration_commands() {
    let out = bmt(&["regenerate", &data("generic4.fac")], "");
    assert_eq!(out.code, 0, "{out:?}");
    assert!(out.stdout.contains("# audit: achieved 48 target 56 deficit 8"));
    let g = bmt::Factorization::parse_text(&out.stdout).unwrap();
    assert_eq!((g.strands(), g.len()), (8, 24));
    let audit = bmt(&["audit", "-"], &out.stdout);
    assert_eq!(audit.stdout, "achieved 48 target 56 deficit 8\n");
    let done = bmt(&["regenerate", &data("generic4.fac"), "--complete-deficit"], "");
    assert!(done.stdout.contains("# completion: inserted exponent-1 factors at"), "{done:?}");
    assert_eq!(bmt(&["check-delta2", "-"], &done.stdout).code, 0);

    let rules = format!("{}/rules.txt", std::env::temp_dir().display());
    std::fs::write(&rules, "# one-sided first node\n1 II-one-sided\n").unwrap();
    let out = bmt(&["regenerate", &data("generic4.fac"), "--rules", &rules], "");
    assert!(out.stdout.contains("deficit 12"), "{out:?}");
    std::fs::write(&rules, "1 IV\n").unwrap();
    let out = bmt(&["regenerate", &data("generic4.fac"), "--rules", &rules], "");
    assert_eq!(out.code, 3);
    assert!(out.stderr.contains("rules.txt:1:3:"), "{out:?}");

    let over = "strands 2\nfactors 2\nconj= ; base= 1 2 ; exp= 2\nconj= ; base= 1 2 ; exp= 1\n";
    assert_eq!(bmt(&["audit", "-"], over).code, 1);
}

#[test]
fn vankampen_command() {
    let mono = bmt(&["monodromy", &data("two_lines.arr")], "");
    let out = bmt(&["vankampen", "-"], &mono.stdout);
    assert_eq!(out.code, 0);
    assert!(out.stdout.starts_with("# abelianization: rank 2\ngens 2\n"));
    assert!(out.stdout.contains("x1 x2 X1 X2\n"));
    assert!(out.stderr.is_empty());
    let cusp = "strands 2\nfactors 1\nconj= ; base= 1 2 ; exp= 3\n";
    let out = bmt(&["vankampen", "-"], cusp);
    assert!(out.stderr.contains("cuspidal"));
    let p = bmt::vankampen::Presentation::parse_text(&out.stdout).unwrap();
    assert_eq!(p.generators(), 2);
}

#[test]
fn input_errors_exit_3_with_positions() {
    let out = bmt(&["check-delta2", "-"], "strands 3\nfactors 1\nconj= s4 ; base= 1 2 ; exp= 1\n");
    assert_eq!(out.code, 3);
    assert!(out.stderr.starts_with("<stdin>:3:"), "{out:?}");
    let out = bmt(&["monodromy", &data("parallel.arr")], "");
    assert_eq!(out.code, 3);
    assert!(out.stderr.contains("deficit 2"));
    let out = bmt(&["monodromy", "-"], "arrangement 2\nline 1 0\nline 1/0 2\n");
    assert!(out.stderr.starts_with("<stdin>:3:6:"), "{out:?}");
    assert_eq!(bmt(&["check-delta2", "/nonexistent/file"], "").code, 3);
    assert_eq!(bmt(&["frobnicate"], "").code, 3);
    assert_eq!(bmt(&["equal", "-", "-"], "strands 2\ns1\n").code, 3);
    assert_eq!(bmt(&["--help"], "").code, 0);
}
