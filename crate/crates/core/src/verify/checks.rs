use super::counts::{le, Count, Counter};
use super::{CheckId, CorpusEntry, Origin, Record, Status, VerifyOptions};
use crate::drawing::Drawing;
use crate::graph::{Graph, Subgraph};
use crate::solver::{best_response, Certificate, SolverError};
use crate::strategy::{beta, orchestrate, Alpha, Kind};
use crate::transform::{boxtimes, check_retract, fold_corner, subdivide, subdivide_with, Placement};

struct Ctx<'a> {
    entry: &'a CorpusEntry,
    opts: &'a VerifyOptions,
    counter: Counter,
    check: CheckId,
    out: Vec<Record>,
}

fn unknown(counts: &[Count]) -> String {
    if counts.iter().any(|c| c.over_budget()) {
        "solver budget exceeded".into()
    } else {
        "cop number beyond the solver cap".into()
    }
}

fn ceil_div(a: u64, b: u64) -> u64 {
    a.div_ceil(b)
}

impl Ctx<'_> {
    fn g(&self) -> &Graph {
        self.entry.drawing.graph()
    }

    fn push(&mut self, case: String, lhs: String, rhs: String, status: Status, reason: Option<String>) {
        self.out.push(Record {
            check: self.check,
            instance: self.entry.id,
            case,
            lhs,
            rhs,
            status,
            reason,
        });
    }

    fn skip(&mut self, case: impl Into<String>, reason: impl Into<String>) {
        self.push(
            case.into(),
            String::new(),
            String::new(),
            Status::Skip,
            Some(reason.into()),
        );
    }

    fn verdict(&mut self, case: String, lhs: String, rhs: String, v: Option<bool>, why: String) {
        match v {
            Some(true) => self.push(case, lhs, rhs, Status::Pass, None),
            Some(false) => self.push(case, lhs, rhs, Status::Fail, None),
            None => self.push(case, lhs, rhs, Status::Skip, Some(why)),
        }
    }

    fn flag(&mut self, case: impl Into<String>, lhs: String, rhs: String, ok: bool) {
        let status = if ok { Status::Pass } else { Status::Fail };
        self.push(case.into(), lhs, rhs, status, None);
    }

    /// Records `a <= b`.
    fn compare(&mut self, case: String, (an, a): (String, Count), (bn, b): (String, Count)) {
        let why = unknown(&[a, b]);
        self.verdict(case, format!("{an}={a}"), format!("{bn}={b}"), le(a, b), why);
    }

    fn count(&self, key: &str, g: &Graph, d: u64) -> Count {
        self.counter.count(key, g, d)
    }

    fn base(&self, d: u64) -> Count {
        self.counter.count("G", self.entry.drawing.graph(), d)
    }

    /// Both sides of `c_lo(G) <= c_d(T) <= c_hi(G) + 1` for a transform `T`.
    #[allow(clippy::too_many_arguments)]
    fn sandwich(&mut self, case: &str, key: &str, t: &Graph, name: &str, d: u64, lo: u64, hi: u64) {
        let mid = self.count(key, t, d);
        let a = self.base(lo);
        let b = self.base(hi);
        self.compare(
            format!("{case} lower"),
            (format!("c_{lo}(G)"), a),
            (format!("c_{d}({name})"), mid),
        );
        self.compare(
            format!("{case} upper"),
            (format!("c_{d}({name})"), mid),
            (format!("c_{hi}(G)+1"), b.plus(1)),
        );
    }
}

pub(super) fn evaluate(entry: &CorpusEntry, which: &[CheckId], opts: &VerifyOptions) -> Vec<Record> {
    let mut ctx = Ctx {
        entry,
        opts,
        counter: Counter::new(opts.cop_cap, opts.max_states),
        check: CheckId::Mono,
        out: Vec::new(),
    };
    for &c in which {
        ctx.check = c;
        let before = ctx.out.len();
        match c {
            CheckId::Mono => mono(&mut ctx),
            CheckId::Subdiv => subdiv(&mut ctx),
            CheckId::TwoDPlus1 => two_d_plus_1(&mut ctx),
            CheckId::Retract => retract(&mut ctx),
            CheckId::Boxtimes => boxtimes_check(&mut ctx),
            CheckId::XxBounds => xx_bounds(&mut ctx),
            CheckId::Alpha => alpha(&mut ctx),
            CheckId::Main => main_check(&mut ctx),
            CheckId::CorTable => cor_table(&mut ctx),
            CheckId::Map => map(&mut ctx),
            CheckId::GenFar => gen_far(&mut ctx),
            CheckId::GenX6 => gen_x6(&mut ctx),
        }
        if ctx.out.len() == before {
            ctx.skip("-", "not applicable");
        }
    }
    ctx.out
}

fn mono(ctx: &mut Ctx) {
    for d in 0..2u64 {
        let hi = ctx.base(d + 1);
        let lo = ctx.base(d);
        ctx.compare(
            format!("d={} vs d={d}", d + 1),
            (format!("c_{}(G)", d + 1), hi),
            (format!("c_{d}(G)"), lo),
        );
    }
}

fn subdivided(ctx: &Ctx, k: usize) -> Option<Graph> {
    subdivide(&ctx.entry.drawing, k).ok().map(|r| r.drawing.graph().clone())
}

fn subdiv(ctx: &mut Ctx) {
    for k in 2..=3usize {
        let Some(t) = subdivided(ctx, k) else {
            ctx.skip(format!("k={k}"), "subdivision rejected the drawing");
            continue;
        };
        for d in 0..=3u64 {
            let ku = k as u64;
            ctx.sandwich(
                &format!("k={k} d={d}"),
                &format!("sub{k}"),
                &t,
                &format!("G^({k})"),
                d,
                ceil_div(d, ku),
                d / ku,
            );
        }
    }
}

fn two_d_plus_1(ctx: &mut Ctx) {
    for d in 0..=1u64 {
        let k = 2 * d as usize + 1;
        let Some(t) = subdivided(ctx, k) else {
            ctx.skip(format!("d={d}"), "subdivision rejected the drawing");
            continue;
        };
        ctx.sandwich(&format!("d={d}"), &format!("sub{k}"), &t, &format!("G^({k})"), d, 0, 0);
    }
}

/// Folds corners `depth` times (or until none is left), returning the kept
/// vertices of `g` and the composed retraction.
fn fold(g: &Graph, depth: usize) -> Option<(Vec<usize>, Vec<usize>)> {
    let mut alive: Vec<usize> = (0..g.n()).collect();
    let mut map: Vec<usize> = (0..g.n()).collect();
    let mut h = g.clone();
    let mut folds = 0;
    while folds < depth {
        let Some(f) = fold_corner(&h) else { break };
        let (removed, onto) = (alive[f.removed], alive[f.onto]);
        for m in map.iter_mut() {
            if *m == removed {
                *m = onto;
            }
        }
        alive.remove(f.removed);
        h = g.induced(&alive).0;
        folds += 1;
    }
    (folds > 0).then_some((alive, map))
}

fn retract(ctx: &mut Ctx) {
    let g = ctx.g().clone();
    for (label, depth) in [("one fold", 1), ("all folds", usize::MAX)] {
        let Some((alive, map)) = fold(&g, depth) else {
            ctx.skip(label, "no corner to fold");
            return;
        };
        let sub = Subgraph {
            edges: (0..g.m())
                .filter(|&e| {
                    let (a, b) = g.edge(e);
                    alive.binary_search(&a).is_ok() && alive.binary_search(&b).is_ok()
                })
                .collect(),
            vertices: alive.clone(),
        };
        let is_retract = check_retract(&g, &sub, &map).unwrap_or(false);
        ctx.flag(
            format!("{label} retraction"),
            format!("|H|={}", alive.len()),
            "retract of G".into(),
            is_retract,
        );
        if !is_retract {
            continue;
        }
        let h = g.induced(&alive).0;
        let rest: Vec<usize> = (0..g.n()).filter(|v| alive.binary_search(v).is_err()).collect();
        let gh = g.induced(&rest).0;
        let hk = format!("H{depth}");
        let rk = format!("R{depth}");
        for d in 0..=2u64 {
            let ch = ctx.count(&hk, &h, d);
            let cg = ctx.base(d);
            let cr = ctx.count(&rk, &gh, d);
            ctx.compare(
                format!("{label} d={d} lower"),
                (format!("c_{d}(H)"), ch),
                (format!("c_{d}(G)"), cg),
            );
            ctx.compare(
                format!("{label} d={d} upper"),
                (format!("c_{d}(G)"), cg),
                (format!("max(c_{d}(H),c_{d}(G-H)+1)"), ch.max(cr.plus(1))),
            );
        }
    }
}

fn boxed(ctx: &Ctx) -> Result<(Drawing, usize), String> {
    boxtimes(&ctx.entry.drawing)
        .map(|r| (r.drawing, r.k_used.unwrap_or(1)))
        .map_err(|e| format!("boxtimes failed: {e}"))
}

fn boxtimes_check(ctx: &mut Ctx) {
    let (b, k) = match boxed(ctx) {
        Ok(x) => x,
        Err(e) => return ctx.skip("-", e),
    };
    let ku = k as u64;
    for d in 0..=3u64 {
        ctx.sandwich(
            &format!("k={k} d={d}"),
            "box",
            b.graph(),
            "G^box",
            d,
            ceil_div(d, ku),
            d / ku,
        );
    }
}

fn finite_xx(d: &Drawing) -> Option<(u64, u64)> {
    let p = d.xx_params();
    Some((p.x.finite()?, p.big_x.finite()?))
}

/// A crossing and consecutive pair realising `X`, one end per edge.
fn far_pins(d: &Drawing, big_x: u64) -> Vec<(usize, (usize, usize))> {
    let dist = d.graph().all_pairs(crate::par::Execution::Sequential);
    let mut out = Vec::new();
    for c in 0..d.crossings().len() {
        let ds = d.pair_distances(c, &dist);
        for (pair, dd) in d.consecutive_pairs(c).into_iter().zip(ds) {
            if dd.finite() == Some(big_x) {
                out.push((c, pair));
            }
        }
    }
    out
}

fn xx_bounds(ctx: &mut Ctx) {
    let d = ctx.entry.drawing.clone();
    let Some((x, big_x)) = finite_xx(&d) else {
        return ctx.skip("-", "infinite x or X");
    };
    let pins = far_pins(&d, big_x);
    for k in 1..=4usize {
        let ku = k as u64;
        let Ok(sub) = subdivide(&d, k) else {
            ctx.skip(format!("k={k}"), "subdivision rejected the drawing");
            continue;
        };
        let Some((sx, sbig)) = finite_xx(&sub.drawing) else {
            ctx.skip(format!("k={k}"), "infinite x or X after subdivision");
            continue;
        };
        let hi_x = ku * x + 2 * (ku - 1);
        let hi_big = ku * big_x + 2 * (ku / 2);
        ctx.flag(
            format!("k={k} x lower"),
            format!("{k}*x={}", ku * x),
            format!("x(G^({k}))={sx}"),
            ku * x <= sx,
        );
        ctx.flag(
            format!("k={k} x upper"),
            format!("x(G^({k}))={sx}"),
            format!("{hi_x}"),
            sx <= hi_x,
        );
        ctx.flag(
            format!("k={k} X upper"),
            format!("X(G^({k}))={sbig}"),
            format!("{hi_big}"),
            sbig <= hi_big,
        );
        if d.crossings().is_empty() {
            ctx.flag(format!("k={k} X lower"), "0".into(), format!("X(G^({k}))={sbig}"), true);
            continue;
        }
        let pinned = pins
            .iter()
            .find_map(|&(crossing, ends)| subdivide_with(&d, k, Placement::Pinned { crossing, ends }).ok());
        match pinned.and_then(|r| finite_xx(&r.drawing)) {
            Some((_, pbig)) => ctx.flag(
                format!("k={k} X lower pinned"),
                format!("{k}*X={}", ku * big_x),
                format!("X(G^({k}))={pbig}"),
                ku * big_x <= pbig,
            ),
            None => ctx.skip(
                format!("k={k} X lower pinned"),
                "no pinned placement for the farthest pair",
            ),
        }
    }
}

const ALPHAS: [(u64, u64); 3] = [(1, 1), (4, 3), (3, 2)];

fn alpha(ctx: &mut Ctx) {
    let Some((x, big_x)) = finite_xx(&ctx.entry.drawing) else {
        return ctx.skip("-", "infinite x or X");
    };
    let (b, _) = match boxed(ctx) {
        Ok(v) => v,
        Err(e) => return ctx.skip("-", e),
    };
    let Some((bx, bbig)) = finite_xx(&b) else {
        return ctx.skip("-", "infinite x or X on G^box");
    };
    for (num, den) in ALPHAS {
        let a = Alpha::new(num, den).unwrap();
        for (part, p, bp, shift) in [("a", big_x, bbig, 1), ("b", x, bx, 2)] {
            let case = format!("({part}) alpha={a}");
            let lo = a.ceil_mul(p + shift);
            let Some(mid) = a.ceil_mul(bp).checked_sub(1) else {
                ctx.skip(case, "negative radius on G^box");
                continue;
            };
            let cm = ctx.count("box", b.graph(), mid);
            let cl = ctx.base(lo);
            ctx.compare(
                format!("{case} left"),
                (format!("c_{lo}(G)"), cl),
                (format!("c_{mid}(G^box)"), cm),
            );
            match a.floor_mul(p).checked_sub(1) {
                Some(hi) => {
                    let ch = ctx.base(hi);
                    ctx.compare(
                        format!("{case} right"),
                        (format!("c_{mid}(G^box)"), cm),
                        (format!("c_{hi}(G)+1"), ch.plus(1)),
                    );
                }
                None => ctx.skip(format!("{case} right"), "negative radius on G"),
            }
        }
    }
}

enum Run {
    Captured { cops: usize, capture: u64, rounds: u32 },
    Escaped { cops: usize, capture: u64 },
    Skipped(String),
    Broken(String),
}

fn run_strategy(ctx: &Ctx, kind: Kind, a: Alpha) -> Run {
    let d = &ctx.entry.drawing;
    let orch = match orchestrate(d, kind, a) {
        Ok(o) => o,
        Err(e) => return Run::Skipped(format!("strategy not applicable: {e}")),
    };
    let cops = orch.cop_count();
    let capture = orch.capture();
    match best_response(d.graph(), &orch, capture, ctx.opts.max_states) {
        Ok(Certificate::Capture { rounds, .. }) => Run::Captured { cops, capture, rounds },
        Ok(Certificate::Escape { .. }) => Run::Escaped { cops, capture },
        Err(SolverError::Budget { .. }) => Run::Skipped("solver budget exceeded".into()),
        Err(e) => Run::Broken(e.to_string()),
    }
}

fn kite_ready(d: &Drawing) -> bool {
    d.rotation().is_some() && d.max_crossings_per_edge() <= 1 && d.profile().is_kite_augmented == Some(true)
}

const STRATEGIES: [(Kind, u64, u64); 6] = [
    (Kind::Big, 1, 1),
    (Kind::Small, 1, 1),
    (Kind::Big, 4, 3),
    (Kind::Small, 4, 3),
    (Kind::Big, 3, 2),
    (Kind::Small, 3, 2),
];

fn main_check(ctx: &mut Ctx) {
    if !kite_ready(&ctx.entry.drawing) {
        return ctx.skip("-", "not a kite-augmented 1-plane drawing with rotation");
    }
    let params = ctx.entry.drawing.xx_params();
    for (kind, num, den) in STRATEGIES {
        let a = Alpha::new(num, den).unwrap();
        let case = format!("{kind} alpha={a}");
        let param = match kind {
            Kind::Big => params.big_x,
            Kind::Small => params.x,
        };
        let Some(param) = param.finite() else {
            ctx.skip(case, "infinite parameter");
            continue;
        };
        let bound = 3 * (2 * beta(kind, a, param).unwrap() as usize + 1);
        match run_strategy(ctx, kind, a) {
            Run::Captured { cops, capture, rounds } => ctx.flag(
                case,
                format!("{cops} cops capture at {capture} in {rounds} rounds"),
                format!("3(2b+1)={bound}"),
                cops <= bound,
            ),
            Run::Escaped { cops, capture } => ctx.flag(
                case,
                format!("{cops} cops at {capture}: robber escapes"),
                format!("3(2b+1)={bound}"),
                false,
            ),
            Run::Broken(e) => ctx.flag(case, format!("strategy error: {e}"), format!("3(2b+1)={bound}"), false),
            Run::Skipped(why) => ctx.skip(case, why),
        }
    }
}

impl Ctx<'_> {
    /// `c_d(G) <= bound`, by the solver or else by a strategy run on `G`
    /// capturing within radius `d` with at most `bound` cops.
    fn bounded(&mut self, case: &str, d: u64, bound: usize, fallback: Option<(Kind, Alpha)>) {
        let c = self.base(d);
        let lhs = format!("c_{d}(G)={c}");
        let rhs = format!("{bound}");
        if c.hi().is_some_and(|h| h <= bound) {
            return self.push(case.into(), lhs, rhs, Status::Pass, None);
        }
        if c.lo() > bound {
            return self.push(case.into(), lhs, rhs, Status::Fail, None);
        }
        let Some((kind, a)) = fallback else {
            return self.push(case.into(), lhs, rhs, Status::Skip, Some(unknown(&[c])));
        };
        match run_strategy(self, kind, a) {
            Run::Captured { cops, capture, .. } if cops <= bound && capture <= d => self.push(
                case.into(),
                format!("strategy {kind} alpha={a}: {cops} cops at {capture}"),
                rhs,
                Status::Pass,
                None,
            ),
            Run::Captured { cops, capture, .. } => self.push(
                case.into(),
                lhs,
                rhs,
                Status::Skip,
                Some(format!("strategy uses {cops} cops at {capture}")),
            ),
            Run::Escaped { cops, capture } => self.push(
                case.into(),
                format!("strategy {kind} alpha={a}: {cops} cops at {capture}, robber escapes"),
                rhs,
                Status::Fail,
                None,
            ),
            Run::Broken(e) => self.push(case.into(), format!("strategy error: {e}"), rhs, Status::Fail, None),
            Run::Skipped(why) => self.push(case.into(), lhs, rhs, Status::Skip, Some(why)),
        }
    }
}

fn cor_table(ctx: &mut Ctx) {
    let d = ctx.entry.drawing.clone();
    let Some((x, big_x)) = finite_xx(&d) else {
        return ctx.skip("All graphs", "infinite x or X");
    };
    let prof = d.profile();
    let one_plane = prof.is_k_plane <= 1;
    let crossed = !d.crossings().is_empty();
    let one = Alpha::ONE;
    let a43 = Alpha::new(4, 3).unwrap();
    let a32 = Alpha::new(3, 2).unwrap();
    if one_plane && prof.all_full {
        ctx.bounded("Full 1-plane graphs", 0, 3, Some((Kind::Big, one)));
    }
    if one_plane && prof.no_x_crossings {
        ctx.bounded("1-plane graphs without x-crossings", 0, 15, Some((Kind::Small, one)));
    }
    if one_plane && crossed {
        ctx.bounded(
            "1-plane graphs (X)",
            big_x.saturating_sub(1),
            6 * big_x as usize - 3,
            Some((Kind::Big, one)),
        );
        if x >= 1 {
            ctx.bounded(
                "1-plane graphs (x)",
                x - 1,
                6 * x as usize + 9,
                Some((Kind::Small, one)),
            );
        }
    }
    if prof.all_full {
        ctx.bounded("Graphs where all crossings are full", 3, 9, Some((Kind::Big, a32)));
    }
    if prof.no_x_crossings {
        ctx.bounded("Graphs without x-crossings", 4, 21, Some((Kind::Small, a43)));
    }
    if ctx.entry.witness.is_some() {
        ctx.bounded("Map graphs", 0, 3, None);
    }
    ctx.bounded("All graphs (X)", a32.ceil_mul(big_x + 1), 9, Some((Kind::Big, a32)));
    ctx.bounded("All graphs (x)", a32.ceil_mul(x + 2), 15, Some((Kind::Small, a32)));
    ctx.bounded(
        "All graphs, 1 < alpha < 3/2 (X)",
        a43.ceil_mul(big_x + 1),
        24,
        Some((Kind::Big, a43)),
    );
    ctx.bounded(
        "All graphs, 1 < alpha < 3/2 (x)",
        a43.ceil_mul(x + 2),
        33,
        Some((Kind::Small, a43)),
    );
}

fn map(ctx: &mut Ctx) {
    let Some(w) = ctx.entry.witness.clone() else {
        return ctx.skip("-", "no witness");
    };
    let cg = ctx.base(0);
    let ch = ctx.count("witness", &w.graph, 0);
    ctx.compare("c(G) <= c(H)".into(), ("c(G)".into(), cg), ("c(H)".into(), ch));
    ctx.compare(
        "planar witness".into(),
        ("c(G)".into(), cg),
        ("3".into(), Count::Exactly(3)),
    );
}

fn gen_far(ctx: &mut Ctx) {
    let Origin::FarCrossings { m, dist, f, .. } = ctx.entry.origin.clone() else {
        return ctx.skip("-", "not a far-crossings output");
    };
    let d = ctx.entry.drawing.clone();
    ctx.flag(
        "1-plane",
        format!("k={}", d.max_crossings_per_edge()),
        "1".into(),
        d.max_crossings_per_edge() <= 1,
    );
    match d.skeleton_regions() {
        Ok(r) => {
            let most = r.crossings_per_region().into_iter().max().unwrap_or(0);
            ctx.flag("crossings per skeleton face", format!("{most}"), "1".into(), most <= 1);
        }
        Err(e) => ctx.flag("crossings per skeleton face", format!("error: {e}"), "1".into(), false),
    }
    match d.min_face_distance() {
        Ok(Some(fd)) => ctx.flag("face distance", format!("{fd}"), format!("f={f}"), fd >= f),
        Ok(None) => ctx.flag(
            "face distance",
            "fewer than two crossings".into(),
            format!("f={f}"),
            true,
        ),
        Err(e) => ctx.flag("face distance", format!("error: {e}"), format!("f={f}"), false),
    }
    let won = ctx.counter.wins(d.graph(), m - 1, dist, ctx.opts.generator_max_states);
    ctx.verdict(
        format!("c_{dist}(G) >= {m}"),
        format!("{} cops win: {won:?}", m - 1),
        format!("m={m}"),
        won.map(|w| !w),
        "solver budget exceeded".into(),
    );
}

fn gen_x6(ctx: &mut Ctx) {
    let Origin::LargeX { m, mu, .. } = ctx.entry.origin.clone() else {
        return ctx.skip("-", "not a large-X output");
    };
    let d = ctx.entry.drawing.clone();
    let Some(big_x) = d.xx_params().big_x.finite() else {
        return ctx.flag("X >= mu", "X infinite".into(), format!("mu={mu}"), false);
    };
    let mu64 = mu as u64;
    ctx.flag("X >= mu", format!("X={big_x}"), format!("mu={mu}"), big_x >= mu64);
    ctx.flag(
        "X <= 3(mu+1)",
        format!("X={big_x}"),
        format!("{}", 3 * (mu64 + 1)),
        big_x <= 3 * (mu64 + 1),
    );
    let Some(r) = (big_x / 6).checked_sub(1) else {
        return ctx.skip("c lower bound", "negative radius");
    };
    let won = ctx.counter.wins(d.graph(), m - 1, r, ctx.opts.generator_max_states);
    ctx.verdict(
        format!("c_{r}(G) >= {m}"),
        format!("{} cops win: {won:?}", m - 1),
        format!("m={m}"),
        won.map(|w| !w),
        "solver budget exceeded".into(),
    );
}
