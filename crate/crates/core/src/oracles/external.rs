use std::io::{BufRead, BufReader, Write};
use std::process::{Child, ChildStdin, Command, Stdio};
use std::sync::mpsc::{self, Receiver, RecvTimeoutError};
use std::thread;
use std::time::Duration;

use super::brute::brute_is_asymmetric;
use super::stack::AsymmetryOracle;
use super::OracleError;
use crate::tournament::Tournament;

/// An asymmetry oracle running as a child process.
///
/// Each request is a tournament in the text format written to the child's
/// stdin; the child answers with one line, `asym` or `sym`. The child stays
/// alive across requests.
pub struct ExecOracle {
    child: Child,
    stdin: ChildStdin,
    lines: Receiver<std::io::Result<String>>,
    timeout: Duration,
    calls: u64,
}

impl ExecOracle {
    /// `command` is split on whitespace into a program and its arguments.
    pub fn spawn(command: &str, timeout: Duration) -> Result<Self, OracleError> {
        let mut parts = command.split_whitespace();
        let program = parts
            .next()
            .ok_or_else(|| OracleError::Protocol("empty oracle command".into()))?;
        let mut child = Command::new(program)
            .args(parts)
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::inherit())
            .spawn()?;
        let stdin = child.stdin.take().expect("piped stdin");
        let stdout = child.stdout.take().expect("piped stdout");
        let (tx, lines) = mpsc::channel();
        thread::spawn(move || {
            for line in BufReader::new(stdout).lines() {
                if tx.send(line).is_err() {
                    break;
                }
            }
        });
        Ok(ExecOracle {
            child,
            stdin,
            lines,
            timeout,
            calls: 0,
        })
    }
}

impl AsymmetryOracle for ExecOracle {
    fn is_asymmetric(&mut self, t: &Tournament) -> Result<bool, OracleError> {
        self.calls += 1;
        self.stdin.write_all(t.to_text().as_bytes())?;
        self.stdin.flush()?;
        let line = match self.lines.recv_timeout(self.timeout) {
            Ok(line) => line?,
            Err(RecvTimeoutError::Timeout) => {
                let _ = self.child.kill();
                return Err(OracleError::Timeout(self.timeout.as_millis() as u64));
            }
            Err(RecvTimeoutError::Disconnected) => {
                return Err(OracleError::Protocol("oracle process closed its output".into()))
            }
        };
        match line.trim() {
            "asym" => Ok(true),
            "sym" => Ok(false),
            other => Err(OracleError::Protocol(format!("unexpected reply '{other}'"))),
        }
    }

    fn calls(&self) -> u64 {
        self.calls
    }
}

impl Drop for ExecOracle {
    fn drop(&mut self) {
        let _ = self.child.kill();
        let _ = self.child.wait();
    }
}

/// Server side of the protocol, answering with the brute-force oracle until
/// the input ends.
pub fn serve<R: BufRead, W: Write>(input: R, mut output: W) -> Result<(), OracleError> {
    let mut lines = input.lines();
    while let Some(header) = lines.next() {
        let header = header?;
        if header.trim().is_empty() {
            continue;
        }
        let mut fields = header.split_whitespace().map(str::parse::<usize>);
        let (Some(Ok(n)), Some(Ok(k))) = (fields.next(), fields.next()) else {
            return Err(OracleError::Protocol(format!("bad header '{header}'")));
        };
        let mut text = header.clone();
        text.push('\n');
        for _ in 0..n + usize::from(k > 0) {
            let line = lines
                .next()
                .ok_or_else(|| OracleError::Protocol("truncated request".into()))??;
            text.push_str(&line);
            text.push('\n');
        }
        let t: Tournament = text.parse()?;
        let reply = if brute_is_asymmetric(&t) { "asym" } else { "sym" };
        writeln!(output, "{reply}")?;
        output.flush()?;
    }
    Ok(())
}
