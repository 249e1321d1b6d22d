use crate::scalar::Scalar;

/// Kronrod abscissae on [0, 1], descending; odd indices are the Gauss-10 nodes.
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_600_525_886_952,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// Number of Gauss nodes inside one Gauss–Kronrod panel.
pub const GAUSS_NODES: usize = 10;

#[derive(Debug, Clone, Copy)]
pub(crate) struct PanelEstimate<T> {
    pub value: T,
    pub error: T,
}

/// 21-point Gauss–Kronrod rule on `[a, b]` with QUADPACK error scaling.
pub(crate) fn gauss_kronrod_21<T: Scalar, F: FnMut(T) -> T>(f: &mut F, a: T, b: T) -> PanelEstimate<T> {
    let half = T::lit(0.5);
    let center = half * (a + b);
    let half_len = half * (b - a);
    let abs_half = half_len.abs();

    let fc = f(center);
    let mut res_g = T::zero();
    let mut res_k = fc * T::lit(WGK[10]);
    let mut res_abs = res_k.abs();
    let mut fv1 = [T::zero(); 10];
    let mut fv2 = [T::zero(); 10];

    for j in 0..10 {
        let dx = half_len * T::lit(XGK[j]);
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        let wk = T::lit(WGK[j]);
        res_k = res_k + wk * (f1 + f2);
        res_abs = res_abs + wk * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g = res_g + T::lit(WG[j / 2]) * (f1 + f2);
        }
    }

    let mean = res_k * half;
    let mut res_asc = T::lit(WGK[10]) * (fc - mean).abs();
    for j in 0..10 {
        res_asc = res_asc + T::lit(WGK[j]) * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let value = res_k * half_len;
    res_abs = res_abs * abs_half;
    res_asc = res_asc * abs_half;
    let mut error = ((res_k - res_g) * half_len).abs();
    if res_asc != T::zero() && error != T::zero() {
        let scale = (T::lit(200.0) * error / res_asc).powf(T::lit(1.5));
        error = if scale < T::one() { res_asc * scale } else { res_asc };
    }
    let floor = T::lit(50.0) * T::epsilon() * res_abs;
    if floor > error {
        error = floor;
    }
    PanelEstimate { value, error }
}
