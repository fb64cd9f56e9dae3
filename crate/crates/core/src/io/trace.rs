use std::fmt::Write;

use crate::mmp::MmpTrace;

fn list(v: &[usize]) -> String {
    format!("{{{}}}", v.iter().map(usize::to_string).collect::<Vec<_>>().join(","))
}

/// Plain-text rendering of an MMP run, one block per step.
pub fn emit_trace(trace: &MmpTrace) -> String {
    let mut out = String::new();
    let p = &trace.initial;
    let _ = writeln!(out, "polytope: dim {}, {} facets", p.dim(), p.len());
    for (k, s) in trace.steps.iter().enumerate() {
        let _ = writeln!(out, "step {}: lambda = {}  {}", k + 1, s.lambda, s.kind);
        let _ = writeln!(out, "  wall {} (initial facets {}), alpha = {}", list(&s.wall), list(&s.wall_origin), s.alpha);
        let _ = writeln!(out, "  facets {} -> {}", s.facet_count_before, s.facet_count_after);
        if let Some(d) = s.lost_face_dim {
            let _ = writeln!(out, "  collapsed face dimension {d}");
        }
        let _ = writeln!(out, "  next fan: rank {}, {} rays", s.fan_after.rank(), s.fan_after.num_rays());
        if s.generality_flag {
            let walls: Vec<String> = s.tied_walls.iter().map(|w| list(w)).collect();
            let _ = writeln!(
                out,
                "  not general: walls {} tie; took the lexicographically smallest wall",
                walls.join(" ")
            );
        }
    }
    let _ = writeln!(out, "effective threshold: {}", trace.sigma);
    let _ = writeln!(out, "core dimension: {}", trace.core.core_dim());
    let f = &trace.fiber;
    let _ = writeln!(
        out,
        "fiber: rank {}, {} rays; base {}",
        f.fiber.rank(),
        f.fiber.num_rays(),
        match &f.base {
            Some(b) => format!("rank {}, {} rays", b.rank(), b.num_rays()),
            None => "not split".into(),
        }
    );
    if trace.general {
        for c in &trace.checks {
            let step = c.step.map(|s| format!("step {}", s + 1)).unwrap_or_else(|| "final".into());
            let verdict = if c.passed { "ok" } else { "FAILED" };
            let _ = writeln!(out, "check {step} {}: {verdict} {}", c.name, c.detail);
        }
    } else {
        let _ = writeln!(out, "checks skipped: input is not general");
    }
    out
}
