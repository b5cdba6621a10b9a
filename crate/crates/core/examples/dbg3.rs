use ovalab_core::regular_pairs::builtin_product_pair;

fn main() {
    let p = builtin_product_pair(3, 1, 0);
    let pt = [-1.6074776437014604, -1.3395647030845501, -1.07165176246764];
    println!("terms: {}", p.map.component(0).to_literal());
    println!("value: {:?}", p.map.evaluate(&pt));
    println!("norm at |pt| = {}", pt.iter().map(|c| c * c).sum::<f64>().sqrt());
}
