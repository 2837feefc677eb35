use game_core::{parse_game, vacuous_requirement};
use nego_engine::{nego_requirement, EngineCaps};
use std::time::Instant;

const BIG: &str = "players Circle Box
vertex a Circle
vertex b Circle
vertex c Box
vertex d Circle
vertex e Circle
vertex f Box
vertex g Circle
edge a a 1 3
edge c c 0 0
edge d d 0 0
edge g g 3 2
edge a b 0 0
edge b a 0 0
edge b c 2 3
edge c b 2 3
edge c d 1 3
edge d c 1 3
edge c e 0 0
edge e c 0 0
edge e f 0 0
edge f e 0 0
edge f g 0 0
edge g f 0 0
init a
";

fn main() {
    let g = parse_game(BIG).unwrap();
    let caps = EngineCaps::default();
    let mut lambda = vacuous_requirement(&g);
    for round in 1..=6 {
        let t0 = Instant::now();
        lambda = nego_requirement(&g, &lambda, &caps).unwrap();
        println!(
            "round {round} in {:?}: {:?}",
            t0.elapsed(),
            lambda.values().iter().map(|x| x.to_string()).collect::<Vec<_>>()
        );
    }
}
