use std::fmt;
use std::io::{self, BufRead, Write};

use super::{is_cell_name, parse_formula, Formula, Sheet};
use crate::error::{Error, Result};
use crate::Scalar;

/// One line of REPL input.
#[derive(Debug, Clone, PartialEq)]
pub enum Command<N> {
    Set(String, Formula<N>),
    Get(String),
    Cells,
    Stats,
    Quit,
}

fn usage(message: &str) -> Error {
    Error::Eval(format!("usage: {message}"))
}

fn cell_name(text: &str) -> Result<String> {
    let name = text.trim();
    if is_cell_name(name) {
        Ok(name.to_owned())
    } else {
        Err(Error::Eval(format!("invalid cell name `{name}`")))
    }
}

impl<N: Scalar> Command<N> {
    /// Parses one line. Blank lines and `#` comments yield `None`.
    pub fn parse(line: &str) -> Result<Option<Self>> {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            return Ok(None);
        }
        let (word, rest) = line
            .split_once(char::is_whitespace)
            .map_or((line, ""), |(w, r)| (w, r.trim()));
        let cmd = match word {
            "set" => {
                let (name, text) = rest
                    .split_once('=')
                    .ok_or_else(|| usage("set <cell> = <formula>"))?;
                Command::Set(cell_name(name)?, parse_formula(text)?)
            }
            "get" if !rest.is_empty() => Command::Get(cell_name(rest)?),
            "get" => return Err(usage("get <cell>")),
            "cells" | "stats" | "quit" if !rest.is_empty() => return Err(usage(word)),
            "cells" => Command::Cells,
            "stats" => Command::Stats,
            "quit" => Command::Quit,
            other => return Err(Error::Eval(format!("unknown command `{other}`"))),
        };
        Ok(Some(cmd))
    }
}

impl<N: Scalar> fmt::Display for Command<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Command::Set(name, formula) => write!(f, "set {name} = {formula}"),
            Command::Get(name) => write!(f, "get {name}"),
            Command::Cells => f.write_str("cells"),
            Command::Stats => f.write_str("stats"),
            Command::Quit => f.write_str("quit"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReplMode {
    /// Prints a prompt; the exit code is always 0.
    Interactive,
    /// No prompt; the exit code is 1 if any command failed.
    Script,
}

impl<N: Scalar> Sheet<N> {
    /// Runs one command, writing its output lines.
    pub fn execute<W: Write>(&mut self, cmd: &Command<N>, out: &mut W) -> io::Result<Result<()>> {
        match cmd {
            Command::Set(name, formula) => self.set(name, formula.clone()),
            Command::Get(name) => match self.get(name) {
                Ok(n) => writeln!(out, "{}", n.canonical())?,
                Err(err) => return Ok(Err(err)),
            },
            Command::Cells => {
                for (name, value) in self.cells() {
                    match value {
                        Some(n) => writeln!(out, "{name}={}", n.canonical())?,
                        None => writeln!(out, "{name}=?")?,
                    }
                }
            }
            Command::Stats => writeln!(out, "recomputes: {}", self.take_recomputes())?,
            Command::Quit => {}
        }
        Ok(Ok(()))
    }
}

/// Reads commands line by line until end of input or `quit`, and returns
/// the process exit code.
pub fn repl<N, R, W>(sheet: &mut Sheet<N>, input: R, mut out: W, mode: ReplMode) -> io::Result<i32>
where
    N: Scalar,
    R: BufRead,
    W: Write,
{
    let mut failed = false;
    let mut lines = input.lines();
    loop {
        if mode == ReplMode::Interactive {
            write!(out, "> ")?;
            out.flush()?;
        }
        let Some(line) = lines.next() else { break };
        let outcome = match Command::<N>::parse(&line?) {
            Ok(None) => continue,
            Ok(Some(Command::Quit)) => break,
            Ok(Some(cmd)) => sheet.execute(&cmd, &mut out)?,
            Err(err) => Err(err),
        };
        if let Err(err) = outcome {
            failed = true;
            writeln!(out, "error: {err}")?;
        }
    }
    out.flush()?;
    Ok(match mode {
        ReplMode::Script if failed => 1,
        _ => 0,
    })
}
