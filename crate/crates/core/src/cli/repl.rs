//! Line-oriented interactive evaluation.

use std::io::{self, BufRead, Write};

use super::eval::{Env, Kernel, RunOutcome};
use super::parser::parse;

const HELP: &str = "statements end with `;`, e.g. `ring A = [a, b];` then `print (a^2, a*b)^2;`\n:help shows this, :quit leaves";

/// True once `buf`, with comments removed, ends a statement.
fn complete(buf: &str) -> bool {
    let code: String = buf.lines().map(|l| l.split('#').next().unwrap_or("")).collect::<Vec<_>>().join("\n");
    code.trim_end().ends_with(';')
}

/// Reads statements from `input` until end of input or `:quit`, keeping
/// bindings between statements. Errors are reported and the session goes on.
pub fn repl<R: BufRead, W: Write>(input: R, mut output: W, prompt: bool) -> io::Result<()> {
    let mut env = Env::new(Kernel::default());
    let mut buf = String::new();
    if prompt {
        write!(output, "> ")?;
        output.flush()?;
    }
    for line in input.lines() {
        let line = line?;
        match line.trim() {
            ":quit" | ":q" => break,
            ":help" => writeln!(output, "{HELP}")?,
            _ => {
                buf.push_str(&line);
                buf.push('\n');
            }
        }
        if complete(&buf) {
            match parse(&buf) {
                Ok(script) => {
                    for stmt in &script.statements {
                        let mut out = RunOutcome::default();
                        let result = env.statement(stmt, &mut out);
                        for l in &out.lines {
                            writeln!(output, "{l}")?;
                        }
                        for f in &out.failures {
                            writeln!(output, "{f}")?;
                        }
                        if let Err(e) = result {
                            writeln!(output, "error at {e}")?;
                            break;
                        }
                    }
                }
                Err(e) => writeln!(output, "parse error at {e}")?,
            }
            buf.clear();
        }
        if prompt {
            write!(output, "{}", if buf.is_empty() { "> " } else { ". " })?;
            output.flush()?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn session(input: &str) -> String {
        let mut out = Vec::new();
        repl(input.as_bytes(), &mut out, false).unwrap();
        String::from_utf8(out).unwrap()
    }

    #[test]
    fn bindings_persist() {
        let out = session("ring A = [a, b];\nideal I = (a^2, a*b);\nprint symb_min(I,\n 2); # split\nprint I;\n");
        assert_eq!(out, "(a^2)\n(a^2, a*b)\n");
    }

    #[test]
    fn errors_do_not_end_the_session() {
        let out = session("ring A = [a];\nprint b;\nprint a +;\nassert a == a^2;\nprint a;\n:quit\nprint a;\n");
        let lines: Vec<&str> = out.lines().collect();
        assert!(lines[0].starts_with("error at 1:7"), "{out}");
        assert!(lines[1].starts_with("parse error"), "{out}");
        assert!(lines[2].contains("assertion failed"), "{out}");
        assert_eq!(lines[3], "(a)");
        assert_eq!(lines.len(), 4);
    }
}
