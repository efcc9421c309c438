use std::fmt::Write as _;

use crate::exactness::DecompositionTrace;
use crate::finset::SetFunction;
use crate::pointedset::PointedCertificate;
use crate::verify::{PushoutCertificate, StabilityFailure, Verdict};

/// Everything the pushout report shows besides the certificate.
pub struct PushoutReport<'a> {
    pub input: &'a str,
    pub notes: &'a [String],
    pub method: &'a str,
    pub certificate: &'a PushoutCertificate,
    pub pointed: Option<&'a PointedCertificate>,
    pub trace: Option<&'a DecompositionTrace>,
    /// The comparison from the direct corner to the decomposed one.
    pub agreement: Option<&'a Verdict<SetFunction, String>>,
}

fn verdict_line(out: &mut String, label: &str, holds: bool) {
    let _ = writeln!(out, "{label}: {holds}");
}

impl PushoutReport<'_> {
    pub fn all_hold(&self) -> bool {
        self.certificate.all_hold()
            && self.pointed.is_none_or(PointedCertificate::all_hold)
            && self.agreement.is_none_or(Verdict::holds)
    }

    pub fn render(&self) -> String {
        let cert = self.certificate;
        let mut out = String::new();
        let _ = writeln!(out, "input: {}", self.input);
        for note in self.notes {
            let _ = writeln!(out, "note: {note}");
        }
        let _ = writeln!(out, "method: {}", self.method);
        let _ = writeln!(out, "corner: {}", cert.cospan.corner());
        let _ = writeln!(out, "h: {}", cert.cospan.left());
        let _ = writeln!(out, "k: {}", cert.cospan.right());
        if let Some(trace) = self.trace {
            for (n, square) in trace.squares.iter().enumerate() {
                let _ = writeln!(out, "stage {} corner: {}", n + 1, square.corner());
            }
            match trace.g2_prime_mono {
                Some(e) => {
                    let _ = writeln!(
                        out,
                        "g'2 mono: kernel pair trivial {}, injective {}",
                        e.kernel_pair_trivial, e.injective
                    );
                }
                None => {
                    let _ = writeln!(out, "g'2 mono: not checked");
                }
            }
        }

        verdict_line(&mut out, "COMMUTES", cert.commutes.holds());
        if let Some(e) = cert.commutes.failure() {
            let _ = writeln!(out, "  h∘f and k∘g differ at {e}");
        }

        verdict_line(&mut out, "PUSHOUT", cert.is_pushout.holds());
        match &cert.is_pushout {
            Verdict::Holds(w) => {
                let _ = writeln!(out, "  comparison: {}", w.comparison);
            }
            Verdict::Fails(f) => {
                let _ = writeln!(out, "  {f}");
            }
        }

        verdict_line(&mut out, "PULLBACK", cert.is_pullback.holds());
        match &cert.is_pullback {
            Verdict::Holds(w) => {
                let _ = writeln!(out, "  pairing: {}", w.pairing);
            }
            Verdict::Fails(f) => {
                let _ = writeln!(out, "  {f}");
            }
        }

        verdict_line(&mut out, "STABILITY", cert.is_stable.holds());
        match &cert.is_stable {
            Verdict::Holds(fibers) => {
                for fiber in fibers {
                    let sq = &fiber.fiber_square;
                    let _ = writeln!(
                        out,
                        "  fiber over {}: {} over {} and {}, pushout",
                        fiber.base_element,
                        sq.apex(),
                        sq.span().left_foot(),
                        sq.span().right_foot()
                    );
                }
            }
            Verdict::Fails(StabilityFailure::Fiber(report)) => {
                let sq = &report.fiber_square;
                let reason = report
                    .fiber_is_pushout
                    .failure()
                    .map(ToString::to_string)
                    .unwrap_or_default();
                let _ = writeln!(
                    out,
                    "  fiber over {}: {} over {} and {}, not a pushout: {reason}",
                    report.base_element,
                    sq.apex(),
                    sq.span().left_foot(),
                    sq.span().right_foot()
                );
            }
            Verdict::Fails(f) => {
                let _ = writeln!(out, "  {f}");
            }
        }

        verdict_line(&mut out, "JOINT-EPI", cert.jointly_epic.holds());
        match &cert.jointly_epic {
            Verdict::Holds(cover) => {
                let entries: Vec<String> = cover.iter().map(|(d, from)| format!("{d} <- {from}")).collect();
                let _ = writeln!(out, "  cover: {}", entries.join(", "));
            }
            Verdict::Fails(u) => {
                let _ = writeln!(out, "  {u}");
            }
        }

        if let Some(p) = self.pointed {
            verdict_line(
                &mut out,
                "BASEPOINT",
                p.corner_basepoint.holds() && p.pullback_basepoint.holds(),
            );
            match &p.corner_basepoint {
                Verdict::Holds(d) => {
                    let _ = writeln!(out, "  corner basepoint: {d}");
                }
                Verdict::Fails((h, k)) => {
                    let _ = writeln!(out, "  h and k send the basepoints to {h} and {k}");
                }
            }
            match &p.pullback_basepoint {
                Verdict::Holds(x) => {
                    let _ = writeln!(out, "  pullback basepoint: {x}");
                }
                Verdict::Fails(x) => {
                    let _ = writeln!(out, "  apex basepoint pairs to {x}");
                }
            }
        }

        if let Some(agreement) = self.agreement {
            verdict_line(&mut out, "AGREEMENT", agreement.holds());
            match agreement {
                Verdict::Holds(m) => {
                    let _ = writeln!(out, "  direct to decomposed: {m}");
                }
                Verdict::Fails(why) => {
                    let _ = writeln!(out, "  {why}");
                }
            }
        }
        out
    }
}
