//! Coordination control of two subsystems with a coordinator.
//!
//! A [`CoordinatedPlant`] bundles the local generators `G1`, `G2`, the
//! coordinator `Gk` and their event sets. On top of it live the checks for
//! conditional independence, decomposability and controllability, the
//! supervisor construction that achieves a conditionally controllable
//! specification exactly, and the distributed computation of the supremal
//! conditionally controllable sublanguage.

use std::fmt;
use std::thread;

use itertools::Itertools;

use crate::alphabet::{Alphabet, Event, EventSet};
use crate::control::{closed_loop, is_controllable, sup_c, Supervisor};
use crate::error::{Error, Result};
use crate::generator::{Generator, Word};
use crate::ops::{
    inverse_project, language_subset, project_onto, sync_all, sync_product, CoordinationScheme,
    Local, ProjectionSpec,
};
use crate::report::PropertyReport;
use crate::structural::{is_observer, is_occ};

/// Checks `E_r(G1 ∥ G2) ∩ E_r(G1) ∩ E_r(G2) ⊆ E_r(Gk)`.
pub fn conditionally_independent(
    g1: &Generator,
    g2: &Generator,
    gk: &Generator,
) -> Result<PropertyReport> {
    let joint = sync_product(g1, g2)?.reachable_events();
    let r1 = g1.reachable_events();
    let r2 = g2.reachable_events();
    let rk = gk.reachable_events();
    let offending = joint
        .iter()
        .find(|e| r1.contains(*e) && r2.contains(*e) && !rk.contains(*e));
    Ok(match offending {
        Some(e) => PropertyReport::fail(
            Word::new(vec![e.clone()]),
            format!("shared event `{e}` is never performed by the coordinator"),
        ),
        None => PropertyReport::pass("every joint move involves the coordinator"),
    })
}

fn require_over(k: &Generator, alphabet: &Alphabet, what: &str) -> Result<()> {
    if k.alphabet().same_events(alphabet) {
        Ok(())
    } else {
        Err(Error::AlphabetMismatch(format!(
            "{what} must be over {alphabet}, found {}",
            k.alphabet()
        )))
    }
}

/// Checks `K = P_{1+k}(K) ∥ P_{2+k}(K) ∥ P_k(K)`.
///
/// `K` is always contained in the right-hand side, so a counterexample is a
/// word of the composition that `K` lacks.
pub fn conditionally_decomposable(
    k: &Generator,
    scheme: &CoordinationScheme,
) -> Result<PropertyReport> {
    require_over(k, scheme.all(), "specification")?;
    let p1 = project_onto(k, &scheme.e1k().event_set());
    let p2 = project_onto(k, &scheme.e2k().event_set());
    let pk = project_onto(k, &scheme.ek().event_set());
    let composed = sync_all(&[&p1, &p2, &pk])?;
    let mut report = language_subset(&composed, k)?;
    report.detail = if report.holds {
        "K equals the product of its projections".into()
    } else {
        "word of P_{1+k}(K) ∥ P_{2+k}(K) ∥ P_k(K) outside K".into()
    };
    Ok(report)
}

/// The three clauses of conditional controllability.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionalControllabilityReport {
    /// `P_k(K)` controllable w.r.t. `L(Gk)` and `E_{k,u}`.
    pub condition_i: PropertyReport,
    /// `P_{1+k}(K)` controllable w.r.t. `L1 ∥ P_k(K) ∥ P^{2+k}_k(L2 ∥ P_k(K))`.
    pub condition_iia: PropertyReport,
    /// The symmetric clause for the second subsystem.
    pub condition_iib: PropertyReport,
    pub holds: bool,
}

impl ConditionalControllabilityReport {
    pub fn clauses(&self) -> [(&'static str, &PropertyReport); 3] {
        [
            ("i", &self.condition_i),
            ("ii.a", &self.condition_iia),
            ("ii.b", &self.condition_iib),
        ]
    }
}

impl fmt::Display for ConditionalControllabilityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, r) in self.clauses() {
            writeln!(f, "({name}) {r}")?;
        }
        Ok(())
    }
}

/// Supervisors for the coordinator and the two local subsystems.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Supervisors {
    pub coordinator: Supervisor,
    pub local1: Supervisor,
    pub local2: Supervisor,
}

impl Supervisors {
    pub fn local(&self, i: Local) -> &Supervisor {
        match i {
            Local::One => &self.local1,
            Local::Two => &self.local2,
        }
    }
}

/// Closed-loop languages of the coordination architecture.
#[derive(Clone, Debug)]
pub struct ClosedLoops {
    /// `L(S_k/G_k)`.
    pub coordinator: Generator,
    /// `L(S_1/[G_1 ∥ (S_k/G_k)])`.
    pub local1: Generator,
    /// `L(S_2/[G_2 ∥ (S_k/G_k)])`.
    pub local2: Generator,
    /// The product of the three.
    pub composed: Generator,
}

/// Output of the supremal conditionally controllable sublanguage computation.
#[derive(Clone, Debug)]
pub struct SynthesisResult {
    /// `supC_k` over `E_k`.
    pub sup_k: Generator,
    /// `supC_{1+k}` over `E_{1+k}`.
    pub sup_1k: Generator,
    /// `supC_{2+k}` over `E_{2+k}`.
    pub sup_2k: Generator,
    /// `supC_k ∥ supC_{1+k} ∥ supC_{2+k}` over `E`.
    pub composed: Generator,
    /// False when the computation was forced past a failed observer/OCC
    /// precondition; the composition is then not guaranteed to be supremal.
    pub certified: bool,
}

impl SynthesisResult {
    pub fn sup_local(&self, i: Local) -> &Generator {
        match i {
            Local::One => &self.sup_1k,
            Local::Two => &self.sup_2k,
        }
    }
}

/// The local generators, the coordinator and their event sets.
#[derive(Clone, Debug)]
pub struct CoordinatedPlant {
    g1: Generator,
    g2: Generator,
    gk: Generator,
    scheme: CoordinationScheme,
    global: Generator,
}

impl CoordinatedPlant {
    /// Derives the coordination scheme from the generators' alphabets.
    pub fn new(g1: Generator, g2: Generator, gk: Generator) -> Result<Self> {
        let scheme = CoordinationScheme::new(
            g1.alphabet().clone(),
            g2.alphabet().clone(),
            gk.alphabet().clone(),
        )?;
        let global = sync_all(&[&g1, &g2, &gk])?;
        Ok(CoordinatedPlant {
            g1,
            g2,
            gk,
            scheme,
            global,
        })
    }

    /// Like [`CoordinatedPlant::new`] but checks the alphabets against `scheme`.
    pub fn with_scheme(
        g1: Generator,
        g2: Generator,
        gk: Generator,
        scheme: &CoordinationScheme,
    ) -> Result<Self> {
        require_over(&g1, scheme.e1(), "G1")?;
        require_over(&g2, scheme.e2(), "G2")?;
        require_over(&gk, scheme.ek(), "Gk")?;
        Self::new(g1, g2, gk)
    }

    pub fn scheme(&self) -> &CoordinationScheme {
        &self.scheme
    }

    pub fn g1(&self) -> &Generator {
        &self.g1
    }

    pub fn g2(&self) -> &Generator {
        &self.g2
    }

    pub fn gk(&self) -> &Generator {
        &self.gk
    }

    pub fn local(&self, i: Local) -> &Generator {
        match i {
            Local::One => &self.g1,
            Local::Two => &self.g2,
        }
    }

    /// `L = L(G1 ∥ G2 ∥ Gk)`.
    pub fn global(&self) -> &Generator {
        &self.global
    }

    fn ek_events(&self) -> EventSet {
        self.scheme.ek().event_set()
    }

    /// `(P^{i+k}_i)^{-1}(L_i)`.
    pub fn local_inverse(&self, i: Local) -> Generator {
        inverse_project(self.local(i), self.scheme.local_k(i))
            .expect("E_i ⊆ E_{i+k} with consistent statuses by construction")
    }

    fn coordinator_projection(&self, i: Local) -> ProjectionSpec {
        ProjectionSpec::onto(self.scheme.local_k(i), &self.ek_events())
    }

    /// `P_k(L1 ∥ L2)`, computed locally as
    /// `P^{1+k}_k (P^{1+k}_1)^{-1}(L1) ∩ P^{2+k}_k (P^{2+k}_2)^{-1}(L2)`.
    pub fn coordinator_view_of_locals(&self) -> Result<Generator> {
        let ek = self.ek_events();
        let a = project_onto(&self.local_inverse(Local::One), &ek);
        let b = project_onto(&self.local_inverse(Local::Two), &ek);
        sync_product(&a, &b)
    }

    pub fn conditionally_independent(&self) -> Result<PropertyReport> {
        conditionally_independent(&self.g1, &self.g2, &self.gk)
    }

    pub fn conditionally_decomposable(&self, k: &Generator) -> Result<PropertyReport> {
        conditionally_decomposable(k, &self.scheme)
    }

    fn require_within_plant(&self, k: &Generator) -> Result<()> {
        require_over(k, self.scheme.all(), "specification")?;
        let inside = language_subset(k, &self.global)?;
        if inside.holds {
            Ok(())
        } else {
            Err(Error::Precondition {
                what: "K ⊆ L(G1 ∥ G2 ∥ Gk)".into(),
                report: inside,
            })
        }
    }

    /// The plant of clause (ii): `L_i ∥ C ∥ P^{j+k}_k(L_j ∥ C)`.
    fn extended_local_plant(&self, i: Local, coordinator: &Generator) -> Result<Generator> {
        let other = sync_product(self.local(i.other()), coordinator)?;
        let seen = project_onto(&other, &self.ek_events());
        sync_all(&[self.local(i), coordinator, &seen])
    }

    /// Evaluates the three clauses of conditional controllability.
    /// Fails with a precondition error unless `K ⊆ L(G1 ∥ G2 ∥ Gk)`.
    pub fn conditionally_controllable(
        &self,
        k: &Generator,
    ) -> Result<ConditionalControllabilityReport> {
        self.require_within_plant(k)?;
        let pk = project_onto(k, &self.ek_events());
        let mut condition_i = is_controllable(&pk, &self.gk, &self.scheme.ek_u())?;
        condition_i.detail = format!("(i) P_k(K) w.r.t. L_k: {}", condition_i.detail);
        let mut local = Vec::with_capacity(2);
        for i in Local::BOTH {
            let spec = project_onto(k, &self.scheme.local_k(i).event_set());
            let plant = self.extended_local_plant(i, &pk)?;
            let mut r = is_controllable(&spec, &plant, &self.scheme.local_k_u(i))?;
            let n = i.index();
            r.detail = format!("(ii) P_{{{n}+k}}(K) w.r.t. local plant {n}: {}", r.detail);
            local.push(r);
        }
        let condition_iib = local.pop().expect("two clauses");
        let condition_iia = local.pop().expect("two clauses");
        let holds = condition_i.holds && condition_iia.holds && condition_iib.holds;
        Ok(ConditionalControllabilityReport {
            condition_i,
            condition_iia,
            condition_iib,
            holds,
        })
    }

    /// Realizes `S_k` by `P_k(K)` and `S_i` by `P_{i+k}(K)`.
    ///
    /// Requires conditional independence, decomposability and
    /// controllability of `K`; the first failing check is returned.
    pub fn synthesize_supervisors(&self, k: &Generator) -> Result<Supervisors> {
        let indep = self.conditionally_independent()?;
        if !indep.holds {
            return Err(Error::Precondition {
                what: "conditional independence".into(),
                report: indep,
            });
        }
        let dec = self.conditionally_decomposable(k)?;
        if !dec.holds {
            return Err(Error::Precondition {
                what: "conditional decomposability".into(),
                report: dec,
            });
        }
        let cc = self.conditionally_controllable(k)?;
        if let Some((name, r)) = cc.clauses().into_iter().find(|(_, r)| !r.holds) {
            return Err(Error::Precondition {
                what: format!("conditional controllability ({name})"),
                report: r.clone(),
            });
        }
        Ok(Supervisors {
            coordinator: Supervisor::new(project_onto(k, &self.ek_events())),
            local1: Supervisor::new(project_onto(k, &self.scheme.e1k().event_set())),
            local2: Supervisor::new(project_onto(k, &self.scheme.e2k().event_set())),
        })
    }

    /// Closes the loops of the coordination architecture.
    ///
    /// The local supervisor `S_i` is checked for admissibility against
    /// `G_i ∥ (S_k/G_k) ∥ P^{j+k}_k(G_j ∥ (S_k/G_k))`, the plant it is
    /// designed for; its closed loop language equals `L(S_i) ∥ L(G_i ∥ (S_k/G_k))`.
    pub fn closed_loops(&self, sups: &Supervisors) -> Result<ClosedLoops> {
        let coordinator = closed_loop(&sups.coordinator, &self.gk)?;
        let mut local = Vec::with_capacity(2);
        for i in Local::BOTH {
            let plant = self.extended_local_plant(i, &coordinator)?;
            closed_loop(sups.local(i), &plant)?;
            let under_coordinator = sync_product(self.local(i), &coordinator)?;
            local.push(sync_product(
                sups.local(i).realization(),
                &under_coordinator,
            )?);
        }
        let local2 = local.pop().expect("two loops");
        let local1 = local.pop().expect("two loops");
        let composed = sync_all(&[&local1, &local2, &coordinator])?;
        Ok(ClosedLoops {
            coordinator,
            local1,
            local2,
            composed,
        })
    }

    /// Named observer/OCC reports for `P^{i+k}_k` on `(P^{i+k}_i)^{-1}(L_i)`, i = 1, 2.
    pub fn observer_occ_reports(&self) -> Result<Vec<(String, PropertyReport)>> {
        let mut out = Vec::new();
        for i in Local::BOTH {
            let inv = self.local_inverse(i);
            let spec = self.coordinator_projection(i);
            out.push((
                format!("observer[{}]", i.index()),
                is_observer(&inv, &spec)?,
            ));
            out.push((
                format!("occ[{}]", i.index()),
                is_occ(&inv, &spec, &self.scheme.local_k_u(i))?,
            ));
        }
        Ok(out)
    }

    /// `E1 ∩ E2 ⊆ Ek`.
    pub fn shared_events_covered(&self) -> PropertyReport {
        let ek = self.scheme.ek();
        match self.scheme.shared().into_iter().find(|e| !ek.contains(e)) {
            Some(e) => PropertyReport::fail(
                Word::new(vec![e.clone()]),
                format!("shared event `{e}` is not a coordinator event"),
            ),
            None => PropertyReport::pass("shared events are coordinator events"),
        }
    }

    /// All preconditions of [`CoordinatedPlant::sup_cc`], named.
    pub fn sup_cc_preconditions(&self, k: &Generator) -> Result<Vec<(String, PropertyReport)>> {
        let mut out = vec![
            (
                "shared events ⊆ Ek".to_string(),
                self.shared_events_covered(),
            ),
            (
                "conditional decomposability".to_string(),
                self.conditionally_decomposable(k)?,
            ),
        ];
        out.extend(self.observer_occ_reports()?);
        Ok(out)
    }

    fn gate(&self, k: &Generator, force: bool) -> Result<bool> {
        let mut certified = true;
        for (what, report) in self.sup_cc_preconditions(k)? {
            if report.holds {
                continue;
            }
            let structural = what.starts_with("observer") || what.starts_with("occ");
            if force && structural {
                certified = false;
            } else {
                return Err(Error::Precondition { what, report });
            }
        }
        Ok(certified)
    }

    fn finish(
        &self,
        sup_k: Generator,
        specs: [Generator; 2],
        certified: bool,
    ) -> Result<SynthesisResult> {
        let [spec1, spec2] = specs;
        let local = |i: Local, spec: Generator| -> Result<Generator> {
            let plant = sync_product(self.local(i), &sup_k)?;
            sup_c(&spec, &plant, &self.scheme.local_k_u(i))
        };
        let (sup_1k, sup_2k) = thread::scope(|s| {
            let h = s.spawn(|| local(Local::Two, spec2));
            let a = local(Local::One, spec1);
            (a, h.join().expect("local synthesis thread panicked"))
        });
        let (sup_1k, sup_2k) = (sup_1k?, sup_2k?);
        let composed = sync_all(&[&sup_k, &sup_1k, &sup_2k])?;
        Ok(SynthesisResult {
            sup_k,
            sup_1k,
            sup_2k,
            composed,
            certified,
        })
    }

    /// Supremal conditionally controllable sublanguage of `K ∩ L`:
    ///
    /// * `supC_k = supC(P_k(K) ∥ P_k(L1 ∥ L2) ∥ L_k, L_k, E_{k,u})`
    /// * `supC_{i+k} = supC(P_{i+k}(K) ∥ L_i, L_i ∥ supC_k, E_{i+k,u})`
    ///
    /// and returns the three languages with their product. `K` must be
    /// conditionally decomposable and `E1 ∩ E2 ⊆ Ek`. If `P^{i+k}_k` fails
    /// the observer or OCC property for `(P^{i+k}_i)^{-1}(L_i)` the call is
    /// refused, unless `force` is set, in which case the product is computed
    /// anyway and marked uncertified.
    pub fn sup_cc(&self, k: &Generator, force: bool) -> Result<SynthesisResult> {
        require_over(k, self.scheme.all(), "specification")?;
        let certified = self.gate(k, force)?;
        let ek = self.ek_events();
        let pk = project_onto(k, &ek);
        let locals = self.coordinator_view_of_locals()?;
        let spec_k = sync_all(&[&pk, &locals, &self.gk])?;
        let sup_k = sup_c(&spec_k, &self.gk, &self.scheme.ek_u())?;
        let mut specs = Vec::with_capacity(2);
        for i in Local::BOTH {
            let p = project_onto(k, &self.scheme.local_k(i).event_set());
            specs.push(sync_product(&p, self.local(i))?);
        }
        let specs: [Generator; 2] = specs.try_into().expect("two local specifications");
        self.finish(sup_k, specs, certified)
    }

    /// The same computation for `K ⊆ L`, with the shorter chain
    /// `supC_k = supC(P_k(K), L_k, E_{k,u})`,
    /// `supC_{i+k} = supC(P_{i+k}(K), L_i ∥ supC_k, E_{i+k,u})`.
    pub fn sup_cc_simplified(&self, k: &Generator, force: bool) -> Result<SynthesisResult> {
        self.require_within_plant(k)?;
        let certified = self.gate(k, force)?;
        let pk = project_onto(k, &self.ek_events());
        let sup_k = sup_c(&pk, &self.gk, &self.scheme.ek_u())?;
        let specs = [
            project_onto(k, &self.scheme.e1k().event_set()),
            project_onto(k, &self.scheme.e2k().event_set()),
        ];
        self.finish(sup_k, specs, certified)
    }

    /// Sufficient conditions for the distributed result to coincide with the
    /// global supremal controllable sublanguage: `L_k ⊆ P_k(L_i)` for i = 1, 2,
    /// and `P_{i+k}` OCC for `P_{i+k}^{-1}(L_i ∥ L_k)`.
    pub fn check_optimality_conditions(&self) -> Result<PropertyReport> {
        let ek = self.ek_events();
        let eu = self.scheme.eu();
        for i in Local::BOTH {
            let n = i.index();
            let seen = project_onto(&self.local_inverse(i), &ek);
            let mut r = language_subset(&self.gk, &seen)?;
            if !r.holds {
                r.detail = format!("L_k ⊄ P_k(L_{n}): {}", r.detail);
                return Ok(r);
            }
            let lik = sync_product(self.local(i), &self.gk)?;
            let lifted = inverse_project(&lik, self.scheme.all())?;
            let spec = ProjectionSpec::onto(self.scheme.all(), &self.scheme.local_k(i).event_set());
            let mut r = is_occ(&lifted, &spec, &eu)?;
            if !r.holds {
                r.detail = format!(
                    "P_{{{n}+k}} is not OCC for P_{{{n}+k}}^-1(L_{n} ∥ L_k): {}",
                    r.detail
                );
                return Ok(r);
            }
        }
        Ok(PropertyReport::pass(
            "L_k ⊆ P_k(L_i) and P_{i+k} is OCC for P_{i+k}^-1(L_i ∥ L_k), i = 1, 2",
        ))
    }
}

/// The coordinator `P^1_{1∩k}(G1) ∥ P^2_{2∩k}(G2)`, lifted to `Ek`. It never
/// restricts `G1 ∥ G2`.
pub fn default_coordinator(g1: &Generator, g2: &Generator, ek: &Alphabet) -> Result<Generator> {
    let r1 = g1.reachable_events();
    let r2 = g2.reachable_events();
    if let Some(e) = r1.intersection(&r2).find(|e| !ek.contains(e)) {
        return Err(Error::Precondition {
            what: "shared reachable events ⊆ Ek".into(),
            report: PropertyReport::fail(
                Word::new(vec![e.clone()]),
                format!("shared event `{e}` is not a coordinator event"),
            ),
        });
    }
    let events = ek.event_set();
    let p1 = project_onto(g1, &events);
    let p2 = project_onto(g2, &events);
    let merged = ek.union(&p1.alphabet().union(p2.alphabet())?)?;
    inverse_project(&sync_product(&p1, &p2)?, &merged)
}

/// Searches for a coordinator event set: `E1 ∩ E2` extended by as few
/// events as possible (ties broken lexicographically) such that `K` is
/// conditionally decomposable and the observer/OCC preconditions of
/// [`CoordinatedPlant::sup_cc`] hold. Falls back to the full alphabet.
pub fn suggest_coordinator_events(
    k: &Generator,
    g1: &Generator,
    g2: &Generator,
) -> Result<Alphabet> {
    let all = g1.alphabet().union(g2.alphabet())?;
    require_over(k, &all, "specification")?;
    let base = g1.alphabet().intersect(g2.alphabet()).event_set();
    let candidates: Vec<Event> = all
        .events()
        .filter(|e| !base.contains(*e))
        .cloned()
        .collect();
    for size in 0..=candidates.len() {
        for extra in candidates.iter().cloned().combinations(size) {
            let mut ek: EventSet = base.clone();
            ek.extend(extra);
            let ek = all.restrict(&ek);
            let gk = Generator::universal(ek.clone());
            let plant = CoordinatedPlant::new(g1.clone(), g2.clone(), gk)?;
            if !plant.conditionally_decomposable(k)?.holds {
                continue;
            }
            if plant.observer_occ_reports()?.iter().all(|(_, r)| r.holds) {
                return Ok(ek);
            }
        }
    }
    Ok(all)
}
