use super::{format_rate, View};

/// One reaction per line, `A + B -> C + D`, optionally with
/// ` @ <rate> <units>`. Lines are sorted.
pub fn write_crn(view: &View, rates: bool) -> String {
    let mut lines: Vec<String> = view
        .reactions
        .iter()
        .map(|r| {
            let mut line = format!("{} -> {}", view.side(&r.reactants), view.side(&r.products));
            if rates {
                line.push_str(&format!(" @ {} {}", format_rate(r.rate), r.units()));
            }
            line
        })
        .collect();
    lines.sort();
    lines.iter().map(|l| format!("{l}\n")).collect()
}
