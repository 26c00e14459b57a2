use std::path::PathBuf;
use std::process::{Command, Output};

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_linforest"))
        .args(args)
        .current_dir(root())
        .output()
        .expect("binary runs")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    use std::io::Write;
    use std::process::Stdio;
    let mut child = Command::new(env!("CARGO_BIN_EXE_linforest"))
        .args(args)
        .current_dir(root())
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn value_line(o: &Output) -> String {
    stdout(o).lines().find_map(|l| l.strip_prefix("value: ")).unwrap_or("").to_string()
}

fn tempdir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("linforest-cli-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn solve_forest_on_k4() {
    let o = run(&["solve", "--shape", "forest", "C~"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(value_line(&o), "2");
}

#[test]
fn solve_induced_path_on_triangle() {
    let o = run(&["solve", "--shape", "lip", "Bw"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(value_line(&o), "2");
}

#[test]
fn solve_linear_forest_on_path_edge_list() {
    let o = run(&["solve", "--shape", "lif", "5 4/0 1/1 2/2 3/3 4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(value_line(&o), "5");
}

#[test]
fn solve_reads_stdin_and_writes_csv() {
    let o = run_stdin(&["solve", "--shape", "forest", "--format", "csv"], "C~\nBw\n");
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "index,shape,value,optimal,nodes,witness");
    assert!(lines[1].starts_with("0,forest,2,true,"));
    assert!(lines[2].starts_with("1,forest,2,true,"));
}

#[test]
fn bad_graph6_is_an_input_error() {
    let o = run(&["solve", "--shape", "lif", "C!"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("input error"));
}

#[test]
fn missing_corpus_is_an_input_error() {
    let o = run(&["table-cubic", "--input", "/nonexistent/linforest", "--n", "4"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn order_beyond_enumerator_needs_a_corpus() {
    let o = run(&["table-g", "--n", "9"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn exhausted_budget_reports_a_lower_bound() {
    let first = std::fs::read_to_string(root().join("data/cubic/cubic_14.g6")).unwrap();
    let g6 = first.lines().next().unwrap();
    let o = run(&["solve", "--shape", "forest", "--budget-nodes", "2", g6]);
    assert_eq!(o.status.code(), Some(3));
    assert!(value_line(&o).starts_with(">= "));
}

#[test]
fn table_cubic_small_orders() {
    let o = run(&["table-cubic", "--n", "4..=10"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "n,max_a,min_a,max_lif,min_lif,graphs,complete\n\
         4,2,2,2,2,1,true\n\
         6,4,4,4,3,2,true\n\
         8,5,5,5,5,5,true\n\
         10,7,6,7,6,19,true\n"
    );
}

#[test]
fn conjecture_equality_witnesses_at_five() {
    let o = run(&["conjecture", "--n", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let row = text.lines().nth(1).unwrap();
    assert!(row.starts_with("5,"));
    // K_{2,3} and K_5
    assert!(row.contains("DFw;D~{") || row.contains("D~{;DFw"), "{row}");
}

#[test]
fn extremal_mismatch_is_a_finding() {
    let o = run(&["extremal", "--r", "2..=4"]);
    assert_eq!(o.status.code(), Some(4));
    let text = stdout(&o);
    assert!(text.lines().any(|l| l.starts_with("2,3,3,true,") && l.contains(",Bw,")));
    assert!(text.lines().any(|l| l.starts_with("3,") && l.contains("mismatch")));
    let clean = run(&["extremal", "--r", "2,4"]);
    assert_eq!(clean.status.code(), Some(0));
}

#[test]
fn parallel_and_serial_runs_are_byte_identical() {
    let serial = run(&["greedy", "--r", "3", "--n", "8..=16", "--count", "30", "--exact", "--jobs", "1"]);
    let parallel = run(&["greedy", "--r", "3", "--n", "8..=16", "--count", "30", "--exact", "--jobs", "4"]);
    assert_eq!(serial.status.code(), Some(0));
    assert_eq!(serial.stdout, parallel.stdout);
    let a = run(&["table-g", "--n", "3..=7", "--jobs", "1", "--format", "json"]);
    let b = run(&["table-g", "--n", "3..=7", "--jobs", "3", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn json_output_is_one_object_per_line() {
    let o = run(&["table-g", "--n", "3..=5", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<serde_json::Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[1]["n"], 4);
    assert_eq!(rows[1]["g"], "12/7");
    assert_eq!(rows[1]["complete"], true);
}

#[test]
fn resume_recomputes_only_missing_and_torn_rows() {
    let dir = tempdir("resume");
    let out = dir.join("g.csv");
    let out_s = out.to_str().unwrap();
    let full = run(&["table-g", "--n", "3..=6", "--out", out_s]);
    assert_eq!(full.status.code(), Some(0));
    let reference = std::fs::read_to_string(&out).unwrap();

    // keep the header and the first two rows, then a torn third row
    let lines: Vec<&str> = reference.lines().collect();
    let torn = format!("{}\n{}\n{}\n{}", lines[0], lines[1], lines[2], &lines[3][..3]);
    std::fs::write(&out, torn).unwrap();
    let resumed = run(&["table-g", "--n", "3..=6", "--out", out_s, "--resume"]);
    assert_eq!(resumed.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&out).unwrap(), reference);

    // resuming a finished file changes nothing
    let again = run(&["table-g", "--n", "3..=6", "--out", out_s, "--resume"]);
    assert_eq!(again.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&out).unwrap(), reference);
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn resume_without_out_is_rejected() {
    let o = run(&["table-g", "--n", "3", "--resume"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn gen_cubic_reproduces_committed_corpora() {
    let dir = tempdir("gen");
    let o = run(&["gen-cubic", "--n", "4..=10", "--out", dir.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    for n in [4, 6, 8, 10] {
        let name = format!("cubic_{n}.g6");
        let ours = std::fs::read_to_string(dir.join(&name)).unwrap();
        let committed = std::fs::read_to_string(root().join("data/cubic").join(&name)).unwrap();
        assert_eq!(ours, committed, "{name}");
    }
    let _ = std::fs::remove_dir_all(&dir);
}
