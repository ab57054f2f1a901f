//! Text rendering shared by field and integer polynomials.

/// One nonzero term, sign split from the decimal magnitude.
#[derive(Clone, Debug)]
pub struct Term {
    pub negative: bool,
    pub magnitude: String,
    pub power: usize,
}

fn monomial(t: &Term) -> String {
    let unit = t.magnitude == "1";
    match (t.power, unit) {
        (0, _) => t.magnitude.clone(),
        (1, true) => "X".to_string(),
        (1, false) => format!("{}*X", t.magnitude),
        (k, true) => format!("X^{k}"),
        (k, false) => format!("{}*X^{k}", t.magnitude),
    }
}

/// `c0 + c1*X + ... + cd*X^d` with explicit signs.
pub fn format_ascending(terms: &[Term]) -> String {
    render(terms.iter(), true)
}

/// `X^d+...+c0` without spaces, as used inside factored output.
pub fn format_descending(terms: &[Term]) -> String {
    render(terms.iter().rev(), false)
}

fn render<'a>(terms: impl Iterator<Item = &'a Term>, spaced: bool) -> String {
    let mut out = String::new();
    for (i, t) in terms.enumerate() {
        let body = monomial(t);
        match (i, t.negative, spaced) {
            (0, true, _) => {
                out.push('-');
                out.push_str(&body);
            }
            (0, false, _) => out.push_str(&body),
            (_, true, true) => {
                out.push_str(" - ");
                out.push_str(&body);
            }
            (_, false, true) => {
                out.push_str(" + ");
                out.push_str(&body);
            }
            (_, true, false) => {
                out.push('-');
                out.push_str(&body);
            }
            (_, false, false) => {
                out.push('+');
                out.push_str(&body);
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Renders `(f1)^e1*(f2)^e2*...`; single linear or monomial factors keep
/// their parentheses so the output parses unambiguously.
pub fn format_factored(unit: Option<String>, factors: &[(String, usize)]) -> String {
    let mut parts: Vec<String> = Vec::new();
    if let Some(u) = unit {
        parts.push(u);
    }
    for (f, e) in factors {
        if *e == 1 {
            parts.push(format!("({f})"));
        } else {
            parts.push(format!("({f})^{e}"));
        }
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}
