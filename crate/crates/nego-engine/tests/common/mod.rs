use game_core::{parse_game, vacuous_requirement, ExtRational, Game, Requirement};

pub fn fig1b() -> Game {
    parse_game(
        "players Circle Box\n\
         vertex a Circle\n\
         vertex b Box\n\
         vertex c Circle\n\
         vertex d Box\n\
         edge a b 0 3\n\
         edge b a 0 3\n\
         edge a c 0 0\n\
         edge b d 0 0\n\
         edge c c 1 1\n\
         edge d d 2 2\n\
         init a\n",
    )
    .unwrap()
}

pub fn fig2a() -> Game {
    parse_game(
        "players Circle Box\n\
         vertex a Circle\n\
         vertex b Box\n\
         edge a b 2 2\n\
         edge b a 2 2\n\
         edge a a 0 1\n\
         edge b b 1 0\n\
         init a\n",
    )
    .unwrap()
}

pub fn fig4() -> Game {
    parse_game(
        "players Circle Box Diamond\n\
         vertex a Circle\n\
         vertex b Box\n\
         vertex c Circle\n\
         vertex d Diamond\n\
         vertex e Box\n\
         vertex f Diamond\n\
         edge a b 2 2 0\n\
         edge b a 2 2 0\n\
         edge a c 0 0 0\n\
         edge b e 0 0 0\n\
         edge c d 0 1 0\n\
         edge d c 0 1 0\n\
         edge e f 1 0 0\n\
         edge f e 1 0 0\n\
         edge d d 2 2 0\n\
         edge f f 2 2 0\n\
         init a\n",
    )
    .unwrap()
}

pub fn chain_propagation() -> Game {
    parse_game(
        "players Circle Box\n\
         vertex a Circle\n\
         vertex b Box\n\
         vertex c Circle\n\
         vertex d Box\n\
         vertex e Circle\n\
         edge a b 0 0\n\
         edge b a 0 0\n\
         edge b c 0 0\n\
         edge c b 0 0\n\
         edge c d 0 0\n\
         edge d c 0 0\n\
         edge d e 0 0\n\
         edge e d 0 0\n\
         edge a a 1 1\n\
         edge e e 2 2\n\
         init a\n",
    )
    .unwrap()
}

pub fn scc_no_spe() -> Game {
    parse_game(
        "players Circle Box\n\
         vertex a Box\n\
         vertex b Box\n\
         vertex c Circle\n\
         vertex d Circle\n\
         vertex e Circle\n\
         vertex f Box\n\
         edge a d 3 0\n\
         edge d a 3 0\n\
         edge a b 0 0\n\
         edge b c 0 0\n\
         edge c a 0 0\n\
         edge b b 1 1\n\
         edge c c 3 0\n\
         edge d e 0 0\n\
         edge e f 0 0\n\
         edge f d 0 0\n\
         edge e e 2 2\n\
         edge f f 0 4\n\
         init a\n",
    )
    .unwrap()
}

pub fn big_example() -> Game {
    parse_game(
        "players Circle Box\n\
         vertex a Circle\n\
         vertex b Circle\n\
         vertex c Box\n\
         vertex d Circle\n\
         vertex e Circle\n\
         vertex f Box\n\
         vertex g Circle\n\
         edge a a 1 3\n\
         edge c c 0 0\n\
         edge d d 0 0\n\
         edge g g 3 2\n\
         edge a b 0 0\n\
         edge b a 0 0\n\
         edge b c 2 3\n\
         edge c b 2 3\n\
         edge c d 1 3\n\
         edge d c 1 3\n\
         edge c e 0 0\n\
         edge e c 0 0\n\
         edge e f 0 0\n\
         edge f e 0 0\n\
         edge f g 0 0\n\
         edge g f 0 0\n\
         init a\n",
    )
    .unwrap()
}

/// Requirement from (vertex, value) pairs; unnamed vertices stay -inf.
pub fn req(g: &Game, entries: &[(&str, &str)]) -> Requirement {
    let mut r = vacuous_requirement(g);
    for (name, val) in entries {
        let v = g.vertex_id(name).unwrap();
        r[v] = ExtRational::parse(val).unwrap();
    }
    r
}

/// Requirement from one value per vertex in declaration order.
pub fn row(g: &Game, vals: &[&str]) -> Requirement {
    assert_eq!(vals.len(), g.vertex_count());
    Requirement::new(vals.iter().map(|s| ExtRational::parse(s).unwrap()).collect())
}
