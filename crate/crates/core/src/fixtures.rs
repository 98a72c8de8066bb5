//! Small domains shared by the unit tests.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::ground::{ground, GroundDomain};
use crate::lang::{resolve_times, DomainBuilder, DomainDescription, Formula, Literal, QualTarget, RuleDecl, TimeExpr};

pub(crate) fn grounded(d: &DomainDescription) -> GroundDomain {
    ground(&resolve_times(d).unwrap()).unwrap()
}

fn fl(name: &str) -> Formula {
    Formula::Fluent(name.into())
}

fn nfl(name: &str) -> Formula {
    Formula::negated(fl(name))
}

/// Yale shooting; `q` makes every effect qualified.
pub(crate) fn ysp(q: bool) -> DomainDescription {
    DomainBuilder::new("yale", 3)
        .fluents(&["alive", "loaded"])
        .actions(&["load", "wait", "shoot"])
        .effect("load", vec![], Literal::pos("loaded"), q)
        .effect("shoot", vec![fl("loaded")], Literal::neg("alive"), q)
        .fact_literal(0, Literal::pos("alive"))
        .occurs(0, 1, "load")
        .occurs(1, 2, "wait")
        .occurs(2, 3, "shoot")
        .build()
        .unwrap()
}

/// `[0]parked`, `¬[2]parked`, nothing else.
pub(crate) fn stolen_car() -> DomainDescription {
    DomainBuilder::new("stolen-car", 2)
        .fluents(&["parked"])
        .fact_literal(0, Literal::pos("parked"))
        .fact_literal(2, Literal::neg("parked"))
        .build()
        .unwrap()
}

fn qual_at_end(literal: Literal, cond: Formula) -> RuleDecl {
    RuleDecl::Qual {
        target: QualTarget::Effect { literal, action: None },
        conditions: vec![Formula::at(TimeExpr::var("u"), cond)],
    }
}

fn qual_at_start(literal: Literal, cond: Formula) -> RuleDecl {
    RuleDecl::Qual { target: QualTarget::Effect { literal, action: None }, conditions: vec![cond] }
}

/// Three mutually cancelling actions over `[0,1]`.
pub(crate) fn spy() -> DomainDescription {
    DomainBuilder::new("spy", 1)
        .fluents(&["ev_stolen", "alive", "at_home"])
        .actions(&["steal", "return", "murder"])
        .effect("steal", vec![], Literal::pos("ev_stolen"), true)
        .effect("return", vec![], Literal::pos("at_home"), true)
        .effect("murder", vec![], Literal::neg("alive"), true)
        .rule(qual_at_end(Literal::pos("ev_stolen"), fl("at_home")))
        .rule(qual_at_end(Literal::pos("at_home"), nfl("alive")))
        .rule(qual_at_end(Literal::neg("alive"), fl("ev_stolen")))
        .fact_literal(0, Literal::neg("ev_stolen"))
        .fact_literal(0, Literal::pos("alive"))
        .fact_literal(0, Literal::neg("at_home"))
        .occurs(0, 1, "steal")
        .occurs(0, 1, "return")
        .occurs(0, 1, "murder")
        .build()
        .unwrap()
}

/// Potato in the tailpipe.
pub(crate) fn potato() -> DomainDescription {
    DomainBuilder::new("potato", 2)
        .fluents(&["has_potato", "has_key", "blocked_tp", "get_started"])
        .actions(&["insert_potato", "turn_on_ignition"])
        .effect("insert_potato", vec![fl("has_potato")], Literal::pos("blocked_tp"), true)
        .effect("turn_on_ignition", vec![fl("has_key")], Literal::pos("get_started"), true)
        .rule(qual_at_start(Literal::pos("get_started"), fl("blocked_tp")))
        .fact_literal(0, Literal::pos("has_potato"))
        .fact_literal(0, Literal::pos("has_key"))
        .fact_literal(0, Literal::neg("blocked_tp"))
        .fact_literal(0, Literal::neg("get_started"))
        .occurs(0, 1, "insert_potato")
        .occurs(1, 2, "turn_on_ignition")
        .build()
        .unwrap()
}

/// `[0]loaded`, `[0]alive`, qualified `[0,1]shoot`.
pub(crate) fn mini_ysp() -> DomainDescription {
    DomainBuilder::new("mini-yale", 1)
        .fluents(&["alive", "loaded"])
        .actions(&["shoot"])
        .effect("shoot", vec![fl("loaded")], Literal::neg("alive"), true)
        .fact_literal(0, Literal::pos("loaded"))
        .fact_literal(0, Literal::pos("alive"))
        .occurs(0, 1, "shoot")
        .build()
        .unwrap()
}

/// All subsets of `0..n` as index vectors.
pub(crate) fn subsets(n: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n).map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect()).collect()
}

fn ramify(conds: &[Formula], effect: Literal) -> RuleDecl {
    RuleDecl::Ramify { conditions: conds.to_vec(), effect }
}

fn toggles(b: DomainBuilder, names: &[&str]) -> DomainBuilder {
    names.iter().fold(b, |b, s| {
        let a = format!("toggle{}", &s[2..]);
        b.effect(&a, vec![nfl(s)], Literal::pos(s), false).effect(&a, vec![fl(s)], Literal::neg(s), false)
    })
}

/// Switches, relay, light and detector; `toggle1` over `[0,1]`.
pub(crate) fn circuit(horizon: u32) -> DomainDescription {
    let b = DomainBuilder::new("circuit", horizon)
        .fluents(&["sw1", "sw2", "sw3", "relay", "light", "detect"])
        .actions(&["toggle1", "toggle2", "toggle3"]);
    toggles(b, &["sw1", "sw2", "sw3"])
        .rule(ramify(&[fl("sw1"), fl("sw2")], Literal::pos("light")))
        .rule(ramify(&[nfl("sw1")], Literal::neg("light")))
        .rule(ramify(&[nfl("sw2")], Literal::neg("light")))
        .rule(ramify(&[fl("relay")], Literal::neg("sw2")))
        .rule(ramify(&[fl("sw1"), fl("sw3")], Literal::pos("relay")))
        .rule(ramify(&[nfl("sw1")], Literal::neg("relay")))
        .rule(ramify(&[nfl("sw3")], Literal::neg("relay")))
        .rule(ramify(&[fl("light")], Literal::pos("detect")))
        .fact_literal(0, Literal::neg("sw1"))
        .fact_literal(0, Literal::pos("sw2"))
        .fact_literal(0, Literal::pos("sw3"))
        .fact_literal(0, Literal::neg("relay"))
        .fact_literal(0, Literal::neg("light"))
        .fact_literal(0, Literal::neg("detect"))
        .occurs(0, 1, "toggle1")
        .build()
        .unwrap()
}

/// Two relays that keep flipping `sw2` once `sw1` is closed.
pub(crate) fn relay_loop(horizon: u32) -> DomainDescription {
    let b = DomainBuilder::new("relay-loop", horizon)
        .fluents(&["sw1", "sw2", "relay1", "relay2"])
        .actions(&["toggle1", "toggle2"]);
    toggles(b, &["sw1", "sw2"])
        .rule(ramify(&[fl("sw1"), fl("sw2")], Literal::pos("relay1")))
        .rule(ramify(&[fl("sw1"), nfl("sw2")], Literal::pos("relay2")))
        .rule(ramify(&[fl("relay1")], Literal::neg("sw2")))
        .rule(ramify(&[fl("relay2")], Literal::pos("sw2")))
        .fact_literal(0, Literal::neg("sw1"))
        .fact_literal(0, Literal::pos("sw2"))
        .fact_literal(0, Literal::neg("relay1"))
        .fact_literal(0, Literal::neg("relay2"))
        .occurs(0, 1, "toggle1")
        .build()
        .unwrap()
}
