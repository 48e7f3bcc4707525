//! Text persistence for traces and states.
//!
//! Both formats start with `key=value` header lines describing the run,
//! followed by a CSV block. A trace holds every cell that ever became
//! boundary; a state holds the water of every cell.
//!
//! ```text
//! # hexsnow trace
//! alpha=1
//! ...
//! steps=1954
//! stop=margin
//! i,j,B,T,src_i,src_j
//! -3,1,402,,-2,1
//! ```

use std::fmt::Write as _;
use std::path::Path;

use super::tables::NO_SOURCE;
use crate::error::FormatError;
use crate::hexgrid::AxialCoord;
use crate::reiter::{CellRecord, EventLog, GridState, SimParams, StopReason, Trace};

const TRACE_MAGIC: &str = "# hexsnow trace";
const STATE_MAGIC: &str = "# hexsnow state";
const EVENTS_HEADER: &str = "i,j,B,T,src_i,src_j";
const STATE_HEADER: &str = "i,j,s";

/// `key=value` header lines with their line numbers.
type Header = Vec<(usize, String, String)>;

fn params_header(out: &mut String, p: &SimParams) {
    writeln!(out, "alpha={}", p.alpha).unwrap();
    writeln!(out, "beta={}", p.beta).unwrap();
    writeln!(out, "gamma={}", p.gamma).unwrap();
    writeln!(out, "epsilon={}", p.epsilon).unwrap();
    writeln!(out, "radius={}", p.radius).unwrap();
    writeln!(out, "max_steps={}", p.max_steps).unwrap();
    writeln!(out, "stop_margin={}", p.stop_margin).unwrap();
}

fn opt(v: Option<u64>) -> String {
    v.map(|t| t.to_string()).unwrap_or_default()
}

pub fn trace_to_string(trace: &Trace) -> String {
    let mut out = format!("{TRACE_MAGIC}\n");
    params_header(&mut out, &trace.params);
    writeln!(out, "steps={}", trace.steps).unwrap();
    writeln!(out, "stop={}", trace.stop.as_str()).unwrap();
    writeln!(out, "{EVENTS_HEADER}").unwrap();
    for (c, r) in trace.events.iter() {
        let (si, sj) = r.source.map_or((NO_SOURCE, NO_SOURCE), |s| (s.i, s.j));
        writeln!(out, "{},{},{},{},{},{}", c.i, c.j, opt(r.boundary), opt(r.frozen), si, sj).unwrap();
    }
    out
}

pub fn state_to_string(g: &GridState) -> String {
    let mut out = format!("{STATE_MAGIC}\n");
    params_header(&mut out, &g.params);
    writeln!(out, "t={}", g.t).unwrap();
    writeln!(out, "{STATE_HEADER}").unwrap();
    for (c, cell) in g.cells() {
        writeln!(out, "{},{},{}", c.i, c.j, cell.s).unwrap();
    }
    out
}

/// Line-numbered reader over the header and the CSV block.
struct Reader<'a> {
    lines: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Reader<'a> {
    fn new(text: &'a str, magic: &str) -> Result<Self, FormatError> {
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, l)) if l.trim() == magic => Ok(Self { lines }),
            _ => Err(FormatError::parse(1, format!("expected `{magic}`"))),
        }
    }

    /// Header pairs up to (and consuming) the CSV header line `columns`.
    fn header(&mut self, columns: &str) -> Result<Header, FormatError> {
        let mut out = Vec::new();
        for (n, line) in self.lines.by_ref() {
            let line = line.trim();
            if line == columns {
                return Ok(out);
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| FormatError::parse(n + 1, "expected key=value"))?;
            out.push((n + 1, k.trim().to_string(), v.trim().to_string()));
        }
        Err(FormatError::parse(0, format!("missing `{columns}` block")))
    }

    fn rows(self) -> impl Iterator<Item = (usize, Vec<&'a str>)> {
        self.lines.filter(|(_, l)| !l.trim().is_empty()).map(|(n, l)| (n + 1, l.trim().split(',').collect()))
    }
}

fn num<T: std::str::FromStr>(line: usize, key: &str, v: &str) -> Result<T, FormatError> {
    v.parse().map_err(|_| FormatError::parse(line, format!("bad value `{v}` for {key}")))
}

fn opt_num(line: usize, v: &str) -> Result<Option<u64>, FormatError> {
    if v.is_empty() {
        Ok(None)
    } else {
        num(line, "time", v).map(Some)
    }
}

/// Split the header into simulation parameters and the remaining keys.
fn split_params(header: Header) -> Result<(SimParams, Header), FormatError> {
    let mut p = SimParams::default();
    let mut rest = Vec::new();
    for (n, k, v) in header {
        match k.as_str() {
            "alpha" => p.alpha = num(n, &k, &v)?,
            "beta" => p.beta = num(n, &k, &v)?,
            "gamma" => p.gamma = num(n, &k, &v)?,
            "epsilon" => p.epsilon = num(n, &k, &v)?,
            "radius" => p.radius = num(n, &k, &v)?,
            "max_steps" => p.max_steps = num(n, &k, &v)?,
            "stop_margin" => p.stop_margin = num(n, &k, &v)?,
            _ => rest.push((n, k, v)),
        }
    }
    p.validate()?;
    Ok((p, rest))
}

pub fn parse_trace(text: &str) -> Result<Trace, FormatError> {
    let mut reader = Reader::new(text, TRACE_MAGIC)?;
    let (params, rest) = split_params(reader.header(EVENTS_HEADER)?)?;
    let (mut steps, mut stop) = (None, None);
    for (n, k, v) in rest {
        match k.as_str() {
            "steps" => steps = Some(num(n, &k, &v)?),
            "stop" => stop = Some(StopReason::parse(&v).ok_or_else(|| FormatError::parse(n, format!("bad stop `{v}`")))?),
            _ => return Err(FormatError::parse(n, format!("unknown key `{k}`"))),
        }
    }
    let mut events = EventLog::empty(params.radius);
    for (n, f) in reader.rows() {
        if f.len() != 6 {
            return Err(FormatError::parse(n, "expected 6 fields"));
        }
        let c = AxialCoord::new(num(n, "i", f[0])?, num(n, "j", f[1])?);
        let src: (i32, i32) = (num(n, "src_i", f[4])?, num(n, "src_j", f[5])?);
        let rec = events.record_mut(c).ok_or_else(|| FormatError::parse(n, format!("{c} outside the grid")))?;
        *rec = CellRecord {
            boundary: opt_num(n, f[2])?,
            frozen: opt_num(n, f[3])?,
            source: (src != (NO_SOURCE, NO_SOURCE)).then(|| src.into()),
        };
    }
    Ok(Trace {
        params,
        steps: steps.ok_or_else(|| FormatError::parse(0, "missing steps"))?,
        stop: stop.ok_or_else(|| FormatError::parse(0, "missing stop"))?,
        events,
    })
}

pub fn parse_state(text: &str) -> Result<GridState, FormatError> {
    let mut reader = Reader::new(text, STATE_MAGIC)?;
    let (params, rest) = split_params(reader.header(STATE_HEADER)?)?;
    let mut t = 0;
    for (n, k, v) in rest {
        match k.as_str() {
            "t" => t = num(n, &k, &v)?,
            _ => return Err(FormatError::parse(n, format!("unknown key `{k}`"))),
        }
    }
    let mut water = Vec::new();
    for (n, f) in reader.rows() {
        if f.len() != 3 {
            return Err(FormatError::parse(n, "expected 3 fields"));
        }
        water.push((AxialCoord::new(num(n, "i", f[0])?, num(n, "j", f[1])?), num::<f64>(n, "s", f[2])?));
    }
    Ok(GridState::from_water(params, t, water)?)
}

pub fn write_trace(trace: &Trace, path: &Path) -> Result<(), FormatError> {
    Ok(std::fs::write(path, trace_to_string(trace))?)
}

pub fn read_trace(path: &Path) -> Result<Trace, FormatError> {
    parse_trace(&std::fs::read_to_string(path)?)
}

pub fn write_state(g: &GridState, path: &Path) -> Result<(), FormatError> {
    Ok(std::fs::write(path, state_to_string(g))?)
}

pub fn read_state(path: &Path) -> Result<GridState, FormatError> {
    parse_state(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reiter::run;

    #[test]
    fn trace_round_trip() {
        let sim = run(SimParams { radius: 15, epsilon: 0.05, ..SimParams::default() }).unwrap();
        let text = trace_to_string(&sim.trace);
        let back = parse_trace(&text).unwrap();
        assert_eq!(back, sim.trace);
        assert_eq!(trace_to_string(&back), text);
        // boundary-only cells are kept
        assert!(text.lines().any(|l| l.split(',').nth(3) == Some("")));
    }

    #[test]
    fn state_round_trip_is_bitwise() {
        let sim = run(SimParams { radius: 12, ..SimParams::default() }).unwrap();
        let back = parse_state(&state_to_string(&sim.final_state)).unwrap();
        assert!(back.bit_eq(&sim.final_state));
    }

    #[test]
    fn malformed_input() {
        assert!(parse_trace("nonsense").is_err());
        let good = trace_to_string(&run(SimParams { radius: 8, ..SimParams::default() }).unwrap().trace);
        assert!(parse_trace(&good.replace("stop=", "stop=never")).is_err());
        assert!(parse_trace(&good.replace("beta=0.4", "beta=2")).is_err());
        let truncated: String = good.lines().take(8).map(|l| format!("{l}\n")).collect();
        assert!(parse_trace(&truncated).is_err());
    }
}
