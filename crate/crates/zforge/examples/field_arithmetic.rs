//! Finite-field basics: prime fields, extension fields, inverses, and the
//! prime-picking helper used to hit a target graph size.
//!
//! Run with: cargo run --example field_arithmetic

use zforge::{next_prime_below, FieldSpec};

fn main() {
    prime_field();
    extension_field();
    primes_for_field_orders();
}

fn prime_field() {
    println!("--- F_7 ---\n");
    let f7 = FieldSpec::new(7, 1).unwrap();
    let a = f7.elem(3);
    let b = f7.elem(5);
    println!("3 + 5 = {}", &a + &b);
    println!("3 * 5 = {}", &a * &b);
    println!("-3    = {}", -&a);
    println!(
        "3^-1  = {}  (3 * {} = 1 mod 7)",
        a.inv().unwrap(),
        a.inv().unwrap()
    );
    // Fermat: a^q = a for every element.
    for v in 0..7 {
        assert_eq!(f7.elem(v).pow(7), f7.elem(v));
    }
    println!("a^7 = a holds for all of F_7\n");
}

fn extension_field() {
    println!("--- F_9 = F_3[x]/(modulus) ---\n");
    let f9 = FieldSpec::new(3, 2).unwrap();
    println!("modulus coefficients (constant first): {:?}", f9.modulus());
    println!("elements are encoded 0..9 by their base-3 digits");
    // The element x has encoding 3 (digits [0, 1]).
    let x = f9.elem(3);
    println!(
        "x * x     = {} (encoding of x^2 reduced mod the modulus)",
        &x * &x
    );
    println!(
        "x^8       = {} (multiplicative order divides q - 1)",
        x.pow(8)
    );
    println!("(x+1)^-1  = {}", f9.elem(4).inv().unwrap());
    // Values below p form the prime subfield.
    let two = f9.elem(2);
    println!("2 + 2 = {} stays in the prime subfield", &two + &two);
    println!();
}

fn primes_for_field_orders() {
    println!("--- largest prime <= x (Bertrand step) ---\n");
    for x in [10u64, 30, 100, 1000, 46340] {
        let p = next_prime_below(x);
        println!("next_prime_below({x}) = {p}");
        assert!(2 * p > x);
    }
    println!("\neach result exceeds x/2, so a field order can be picked");
    println!("within a factor 2^s of any target n = q^s");
}
