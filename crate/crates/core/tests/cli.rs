use std::io::Cursor;
use std::process::Command;

struct Outcome {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run_with_stdin(args: &[&str], stdin: &str) -> Outcome {
    let mut input = Cursor::new(stdin.as_bytes().to_vec());
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("rnass").chain(args.iter().copied());
    let code = rnass::cli::run(argv, &mut input, &mut out, &mut err);
    Outcome {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn run(args: &[&str]) -> Outcome {
    run_with_stdin(args, "")
}

const TABLE_TWO: &str = "*((*))\n(*(*))\n((**))\n((*)*)\n((*))*\n(*)(*)\n";

#[test]
fn count() {
    assert_eq!(run(&["count", "9", "3"]).stdout, "50\n");
    assert_eq!(run(&["count", "7", "0"]).stdout, "1\n");
    assert_eq!(run(&["count", "12", "5"]).stdout, "21\n");
    assert_eq!(run(&["count", "4", "2"]).stdout, "0\n");
    assert_eq!(run(&["count", "9"]).code, 2);
    assert_eq!(run(&["count", "-1", "0"]).code, 2);
}

#[test]
fn rank() {
    let o = run(&["rank", "((*)(*))"]);
    assert_eq!((o.code, o.stdout.as_str()), (0, "6\tn=8\tm=3\n"));
    assert_eq!(run(&["rank", "****"]).stdout, "0\tn=4\tm=0\n");
    assert_eq!(run(&["rank", ".((.))"]).stdout, "0\tn=6\tm=2\n");
    let o = run(&["rank", "()"]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("empty hairpin"), "{}", o.stderr);
}

#[test]
fn rank_batch_from_stdin_keeps_order() {
    let o = run_with_stdin(&["rank"], "(*)(*)\n*((*))\n((*))\n(*)((*))\n");
    assert_eq!(o.code, 0);
    assert_eq!(
        o.stdout,
        "5\tn=6\tm=2\n0\tn=6\tm=2\n0\tn=5\tm=2\n9\tn=8\tm=3\n"
    );
    assert_eq!(run_with_stdin(&["rank"], "(*)\n)(\n").code, 2);
}

#[test]
fn unrank() {
    assert_eq!(run(&["unrank", "8", "3", "9"]).stdout, "(*)((*))\n");
    assert_eq!(run(&["unrank", "5", "0", "0"]).stdout, "*****\n");
    assert_eq!(run(&["--dot", "unrank", "8", "3", "9"]).stdout, "(.)((.))\n");
    let o = run(&["unrank", "6", "2", "6"]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("out of range"), "{}", o.stderr);
    let o = run(&["unrank", "4", "2", "0"]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("no structures"), "{}", o.stderr);
    assert_eq!(run(&["unrank", "6", "2", "+1"]).code, 2);
    assert_eq!(run(&["unrank", "6", "2", "x"]).code, 2);
}

#[test]
fn unrank_big_rank() {
    let count = run(&["count", "300", "100"]).stdout;
    let count = count.trim();
    assert!(count.len() > 20);
    let last = {
        let value: num_bigint::BigUint = count.parse().unwrap();
        (value - 1u32).to_string()
    };
    let word = run(&["unrank", "300", "100", &last]).stdout;
    let back = run(&["rank", word.trim()]).stdout;
    assert_eq!(back, format!("{last}\tn=300\tm=100\n"));
    assert_eq!(run(&["unrank", "300", "100", count]).code, 2);
}

#[test]
fn enumerate() {
    assert_eq!(run(&["enumerate", "6", "2"]).stdout, TABLE_TWO);
    assert_eq!(
        run(&["enumerate", "8", "3", "--from", "0", "--to", "3"]).stdout,
        "*(((*)))\n(*((*)))\n((*(*)))\n"
    );
    let o = run(&["enumerate", "4", "2"]);
    assert_eq!((o.code, o.stdout.as_str()), (0, ""));
    assert_eq!(run(&["enumerate", "6", "2", "--to", "7"]).code, 2);
}

#[test]
fn sample() {
    let a = run(&["sample", "30", "9", "50", "--seed", "17"]);
    let b = run(&["sample", "30", "9", "50", "--seed", "17"]);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, run(&["sample", "30", "9", "50", "--seed", "18"]).stdout);
    for line in a.stdout.lines() {
        let word: rnass::MotzkinWord = line.parse().unwrap();
        assert_eq!((word.len(), word.pairs()), (30, 9));
    }
    let table_two: Vec<&str> = TABLE_TWO.lines().collect();
    for line in run(&["sample", "6", "2", "40"]).stdout.lines() {
        assert!(table_two.contains(&line));
    }
    assert_eq!(run(&["sample", "4", "2", "1"]).code, 2);
}

#[test]
fn convert() {
    assert_eq!(
        run(&["convert", "--to", "variant", "*((*))"]).stdout,
        "(0,(1,(0,0,(1,(0,0,(),())),())))\n"
    );
    assert_eq!(
        run(&["convert", "--to", "structure", "(0,(1,(0,0,(1,(0,0,(),())),())))", "--n", "6"]).stdout,
        "*((*))\n"
    );
    assert_eq!(
        run(&["convert", "--to", "structure", "()", "--n", "3", "--m", "0"]).stdout,
        "***\n"
    );
    assert_eq!(run(&["convert", "--to", "structure", "()"]).code, 2);
    assert_eq!(run(&["convert", "--to", "structure", "(2,())", "--n", "3"]).code, 2);
    assert_eq!(run(&["convert", "--to", "structure", "()", "--n", "3", "--m", "1"]).code, 2);
}

#[test]
fn table_override() {
    assert_eq!(run(&["--table", "20", "5", "unrank", "8", "3", "9"]).stdout, "(*)((*))\n");
    let o = run(&["--table", "6", "2", "unrank", "8", "3", "9"]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("does not cover"), "{}", o.stderr);
}

#[test]
fn selftest() {
    let o = run(&["selftest", "0"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.ends_with("1 cells, 0 failed\n"), "{}", o.stdout);

    let o = run(&["selftest", "10"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("n=9  m=3  count=50       oracle=50       PASS"));
    assert!(o.stdout.contains("n=10 m=4  count=15 "));

    let o = run(&["selftest", "14", "--json"]);
    assert_eq!(o.code, 0);
    let json: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(json["passed"], true);
    assert_eq!(json["failed"], 0);
    assert_eq!(json["reports"].as_array().unwrap().len(), 64);

    assert_eq!(run(&["selftest", "17"]).code, 2);
}

#[test]
fn help_and_usage() {
    assert_eq!(run(&["--help"]).code, 0);
    assert_eq!(run(&[]).code, 2);
    assert_eq!(run(&["frobnicate"]).code, 2);
}

#[test]
fn binary_is_deterministic() {
    let exe = env!("CARGO_BIN_EXE_rnass");
    let sample = || {
        Command::new(exe)
            .args(["sample", "8", "3", "1000", "--seed", "99"])
            .output()
            .unwrap()
    };
    let (a, b) = (sample(), sample());
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    let bad = Command::new(exe).args(["rank", "()"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(bad.stdout.is_empty());
}
