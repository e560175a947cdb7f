//! Values printed in the reference tables, kept as the printed strings.
//! They are only ever compared against; nothing is computed from them.

/// A printed value and how many of its significant digits are certain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Printed {
    pub text: &'static str,
    pub digits: u32,
}

const fn p10(text: &'static str) -> Printed {
    Printed { text, digits: 10 }
}

/// `(j, c_j)` for `a = 1/2`, `nu = 1/4`.
pub const TABLE1: [(usize, &str); 10] = [
    (1, "-5/12"),
    (2, "-35/288"),
    (3, "-665/10368"),
    (4, "9625/497664"),
    (5, "1856855/5971968"),
    (6, "606631025/429981696"),
    (7, "27773871125/5159780352"),
    (8, "8996211899675/495338913792"),
    (9, "2459153764892825/53496602689536"),
    (10, "-22173972436540925/1283918464548864"),
];

/// One printed row: the point, the parameters and the two columns.
#[derive(Clone, Copy, Debug)]
pub struct PublishedRow {
    pub a: &'static str,
    pub nu: &'static str,
    /// `"15"` on the real axis, `"15i"` on the imaginary axis.
    pub z: &'static str,
    pub left: Printed,
    pub right: Printed,
}

const fn row(a: &'static str, nu: &'static str, z: &'static str, left: Printed, right: Printed) -> PublishedRow {
    PublishedRow { a, nu, z, left, right }
}

/// Upper half: the function and `E(zeta)` with `j <= 10`. Lower half: the
/// function minus the optimally truncated `H`, and `E~_1`.
pub const TABLE2: [PublishedRow; 8] = [
    row("1/2", "1/4", "5", p10("3.452097942e1"), p10("3.461544352e1")),
    row("1/2", "1/4", "10", p10("1.226039040e5"), p10("1.226039286e5")),
    row("1/2", "1/4", "12", p10("6.877617187e6"), p10("6.877617204e6")),
    row("1/2", "1/4", "15", p10("5.182624938e9"), p10("5.182624938e9")),
    row("1/2", "1/4", "10i", p10("-4.572292174e-6"), Printed { text: "-4.57195324e-6", digits: 9 }),
    row("1/2", "1/4", "15i", p10("4.021530098e-10"), p10("4.021543491e-10")),
    row("1/2", "1/4", "20i", p10("6.827666326e-12"), p10("6.827666325e-12")),
    row("1/2", "1/4", "25i", p10("3.515426867e-15"), p10("3.515426867e-15")),
];

/// The function and its asymptotic estimate for `a = -sigma`, real `z`.
pub const TABLE3: [PublishedRow; 12] = [
    row("-1/5", "1/3", "8", p10("1.371278215e4"), p10("1.371994397e4")),
    row("-1/5", "1/3", "10", p10("-1.628234940e7"), p10("-1.628235076e7")),
    row("-1/5", "1/3", "15", p10("-2.287676991e22"), p10("-2.287676991e22")),
    row("-1/3", "1/3", "5", p10("4.994707877e1"), p10("4.992261627e1")),
    row("-1/3", "1/3", "8", p10("5.127188845e2"), p10("5.127188845e2")),
    row("-1/3", "1/3", "10", p10("1.563077837e3"), p10("1.563077837e3")),
    row("-1/2", "1/3", "3", p10("4.705453951e0"), p10("4.719691159e0")),
    row("-1/2", "1/3", "5", p10("1.918197617e1"), p10("1.918197638e1")),
    row("-1/2", "1/3", "8", p10("8.747082153e1"), p10("8.747082153e1")),
    row("-3/5", "1/3", "3", p10("4.075339511e0"), p10("4.074935642e0")),
    row("-3/5", "1/3", "4", p10("7.439302510e0"), p10("7.439299037e0")),
    row("-3/5", "1/3", "5", p10("1.276299496e1"), p10("1.276299496e1")),
];

/// The function and its algebraic estimate for `a = -sigma`, `z = i|z|`.
pub const TABLE4: [PublishedRow; 8] = [
    row("-1/4", "4/3", "6i", p10("3.044656205e-2"), p10("3.044653596e-2")),
    row("-1/4", "4/3", "8i", p10("1.673275565e-2"), p10("1.673275565e-2")),
    row("-1/3", "4/3", "6i", p10("2.792844201e-2"), p10("2.792844405e-2")),
    row("-1/3", "4/3", "8i", p10("1.539185802e-2"), p10("1.539185802e-2")),
    row("-1/2", "4/3", "4i", p10("5.552864403e-2"), p10("5.553062223e-2")),
    row("-1/2", "4/3", "5i", p10("3.420993477e-2"), p10("3.420993479e-2")),
    row("-3/4", "4/3", "3i", p10("7.704243224e-2"), p10("7.704358006e-2")),
    row("-3/4", "4/3", "4i", p10("4.087728092e-2"), p10("4.087728092e-2")),
];
