//! Bessel functions J, Y (orders 0 and 1) and the modified Bessel K.
//!
//! J and Y come from `libm` (ports of the classic fdlibm kernels, accurate
//! to a few ulp). K₀/K₁ and the I₀/I₁ they need near the origin use the
//! well-known Chebyshev expansions evaluated by Clenshaw recurrence, with
//! exponentially scaled variants so the decaying tail never underflows
//! prematurely.

use crate::error::{OhtError, Result};

/// Returns (J_ν(x), Y_ν(x), K_ν(x)) for ν ∈ {0, 1} and x > 0.
///
/// K_ν is computed via its scaled form e^x K_ν(x) internally; the returned
/// unscaled value underflows gracefully to 0 for x ≳ 740.
pub fn bessel_jyk(nu: u32, x: f64) -> Result<(f64, f64, f64)> {
    if !(x > 0.0) {
        return Err(OhtError::Domain(format!("bessel_jyk requires x > 0, got {x}")));
    }
    match nu {
        0 => Ok((libm::j0(x), libm::y0(x), k0_scaled(x) * (-x).exp())),
        1 => Ok((libm::j1(x), libm::y1(x), k1_scaled(x) * (-x).exp())),
        _ => Err(OhtError::Param(format!("bessel_jyk implemented for nu in {{0,1}}, got {nu}"))),
    }
}

/// Clenshaw evaluation of a Chebyshev series (Cephes `chbevl` layout).
fn chbevl(x: f64, coeffs: &[f64]) -> f64 {
    let mut b0 = coeffs[0];
    let mut b1 = 0.0;
    let mut b2 = 0.0;
    for c in &coeffs[1..] {
        b2 = b1;
        b1 = b0;
        b0 = x * b1 - b2 + c;
    }
    0.5 * (b0 - b2)
}

/// e^{−x} I₀(x).
fn i0_scaled(x: f64) -> f64 {
    let ax = x.abs();
    if ax <= 8.0 {
        chbevl(0.5 * ax - 2.0, &I0_A)
    } else {
        chbevl(32.0 / ax - 2.0, &I0_B) / ax.sqrt()
    }
}

/// e^{−x} I₁(x).
fn i1_scaled(x: f64) -> f64 {
    let ax = x.abs();
    let v = if ax <= 8.0 {
        chbevl(0.5 * ax - 2.0, &I1_A) * ax
    } else {
        chbevl(32.0 / ax - 2.0, &I1_B) / ax.sqrt()
    };
    if x < 0.0 {
        -v
    } else {
        v
    }
}

/// e^{x} K₀(x) for x > 0.
pub fn k0_scaled(x: f64) -> f64 {
    if x <= 2.0 {
        let y = x * x - 2.0;
        let k0 = chbevl(y, &K0_A) - (0.5 * x).ln() * i0_scaled(x) * x.exp();
        k0 * x.exp()
    } else {
        chbevl(8.0 / x - 2.0, &K0_B) / x.sqrt()
    }
}

/// e^{x} K₁(x) for x > 0.
pub fn k1_scaled(x: f64) -> f64 {
    if x <= 2.0 {
        let y = x * x - 2.0;
        let k1 = (0.5 * x).ln() * i1_scaled(x) * x.exp() + chbevl(y, &K1_A) / x;
        k1 * x.exp()
    } else {
        chbevl(8.0 / x - 2.0, &K1_B) / x.sqrt()
    }
}

const I0_A: [f64; 30] = [
    -4.415_341_646_479_339e-18,
    3.330_794_518_822_238e-17,
    -2.431_279_846_547_955e-16,
    1.715_391_285_555_133e-15,
    -1.168_533_287_799_345e-14,
    7.676_185_498_604_936e-14,
    -4.856_446_783_111_929e-13,
    2.955_052_663_129_64e-12,
    -1.726_826_291_441_556e-11,
    9.675_809_035_373_237e-11,
    -5.189_795_601_635_263e-10,
    2.659_823_724_682_386_6e-9,
    -1.300_025_009_986_248e-8,
    6.046_995_022_541_919e-8,
    -2.670_793_853_940_612e-7,
    1.117_387_539_120_103_7e-6,
    -4.416_738_358_458_750_5e-6,
    1.644_844_807_072_889_6e-5,
    -5.754_195_010_082_104e-5,
    1.885_028_850_958_416_5e-4,
    -5.763_755_745_385_824e-4,
    1.639_475_616_941_335_7e-3,
    -4.324_309_995_050_576e-3,
    1.054_646_039_459_499_8e-2,
    -2.373_741_480_589_947e-2,
    4.930_528_423_967_071e-2,
    -9.490_109_704_804_764e-2,
    1.716_209_015_222_087_7e-1,
    -3.046_826_723_431_984e-1,
    6.767_952_744_094_761e-1,
];

const I0_B: [f64; 25] = [
    -7.233_180_487_874_754e-18,
    -4.830_504_485_944_182e-18,
    4.465_621_420_296_76e-17,
    3.461_222_867_697_461e-17,
    -2.827_623_980_516_583_6e-16,
    -3.425_485_619_677_219e-16,
    1.772_560_133_056_526_3e-15,
    3.811_680_669_352_622_4e-15,
    -9.554_846_698_828_307e-15,
    -4.150_569_347_287_222e-14,
    1.540_086_217_521_41e-14,
    3.852_778_382_742_142_6e-13,
    7.180_124_451_383_666e-13,
    -1.794_178_531_506_806_2e-12,
    -1.321_581_184_044_771_3e-11,
    -3.149_916_527_963_241_6e-11,
    1.188_914_710_784_643_9e-11,
    4.940_602_388_224_97e-10,
    3.396_232_025_708_386_5e-9,
    2.266_668_990_498_178e-8,
    2.048_918_589_469_063_8e-7,
    2.891_370_520_834_756_7e-6,
    6.889_758_346_916_825e-5,
    3.369_116_478_255_694_3e-3,
    8.044_904_110_141_088e-1,
];

const I1_A: [f64; 29] = [
    2.777_914_112_761_046_4e-18,
    -2.111_421_214_358_166e-17,
    1.553_631_957_736_200_5e-16,
    -1.105_596_947_735_386_2e-15,
    7.600_684_294_735_408e-15,
    -5.042_185_504_727_912e-14,
    3.223_793_365_945_575e-13,
    -1.983_974_397_764_943_6e-12,
    1.173_618_629_889_090_1e-11,
    -6.663_489_723_502_027e-11,
    3.625_590_281_552_117e-10,
    -1.887_249_751_722_829_4e-9,
    9.381_537_386_495_773e-9,
    -4.445_059_128_796_328e-8,
    2.003_294_753_552_135_3e-7,
    -8.568_720_264_695_455e-7,
    3.470_251_308_137_678_5e-6,
    -1.327_316_365_603_943_6e-5,
    4.781_565_107_550_054e-5,
    -1.617_608_158_258_967_4e-4,
    5.122_859_561_685_758e-4,
    -1.513_572_450_631_253_2e-3,
    4.156_422_944_312_888e-3,
    -1.056_408_489_462_619_7e-2,
    2.472_644_903_062_651_6e-2,
    -5.294_598_120_809_499e-2,
    1.026_436_586_898_471e-1,
    -1.764_165_183_578_340_6e-1,
    2.525_871_864_436_336_5e-1,
];

const I1_B: [f64; 25] = [
    7.517_296_310_842_105e-18,
    4.414_348_323_071_708e-18,
    -4.650_305_368_489_358e-17,
    -3.209_525_921_993_424e-17,
    2.962_628_997_645_950_4e-16,
    3.308_202_310_920_928_4e-16,
    -1.880_354_775_510_782_4e-15,
    -3.814_403_072_437_008e-15,
    1.042_027_698_412_880_3e-14,
    4.272_440_016_711_951e-14,
    -2.101_541_842_772_664_3e-14,
    -4.083_551_111_092_197e-13,
    -7.198_551_776_245_909e-13,
    2.035_628_544_147_089_5e-12,
    1.412_580_743_661_378e-11,
    3.252_603_583_015_488e-11,
    -1.897_495_812_350_541_2e-11,
    -5.589_743_462_196_584e-10,
    -3.835_380_385_964_237e-9,
    -2.631_468_846_889_519_5e-8,
    -2.512_236_237_870_209e-7,
    -3.882_564_808_877_69e-6,
    -1.105_889_387_626_237_2e-4,
    -9.761_097_491_361_468e-3,
    7.785_762_350_182_801e-1,
];

const K0_A: [f64; 10] = [
    1.374_465_435_613_523e-16,
    4.259_816_142_796_61e-14,
    1.034_969_525_763_384_2e-11,
    1.904_516_377_220_209e-9,
    2.534_791_079_026_149_4e-7,
    2.286_212_103_119_451_8e-5,
    1.264_615_411_446_926e-3,
    3.597_993_651_536_15e-2,
    3.442_898_999_246_285e-1,
    -5.353_273_932_339_028e-1,
];

const K0_B: [f64; 25] = [
    5.300_433_772_686_263e-18,
    -1.647_580_430_152_421_3e-17,
    5.210_391_505_039_027_5e-17,
    -1.678_231_096_805_412e-16,
    5.512_055_978_524_319e-16,
    -1.848_593_377_343_779e-15,
    6.340_076_477_405_071e-15,
    -2.227_513_326_991_67e-14,
    8.032_890_775_363_575e-14,
    -2.980_096_923_172_73e-13,
    1.140_340_586_444_483_4e-12,
    -4.514_597_883_373_944e-12,
    1.855_949_114_954_717_8e-11,
    -7.957_489_244_477_107e-11,
    3.577_397_281_400_301e-10,
    -1.697_534_509_389_059_9e-9,
    8.574_034_017_414_226e-9,
    -4.660_489_897_687_948e-8,
    2.766_813_639_445_015e-7,
    -1.831_755_522_719_119_5e-6,
    1.394_981_371_887_65e-5,
    -1.284_954_958_162_780_3e-4,
    1.569_883_885_730_053_4e-3,
    -3.144_810_131_196_45e-2,
    2.440_303_082_065_955_6,
];

const K1_A: [f64; 11] = [
    -7.023_863_479_386_287e-18,
    -2.427_449_850_519_366e-15,
    -6.666_901_694_199_329e-13,
    -1.411_488_392_633_527_7e-10,
    -2.213_387_630_734_726e-8,
    -2.433_406_141_565_968e-6,
    -1.730_288_957_513_052e-4,
    -6.975_723_859_639_864e-3,
    -1.226_111_808_226_571_5e-1,
    -3.531_559_607_765_449e-1,
    1.525_300_227_338_947_7,
];

const K1_B: [f64; 25] = [
    -5.754_195_010_082_103e-18,
    1.793_414_127_314_946_7e-17,
    -5.683_322_174_402_655e-17,
    1.835_909_219_095_351_4e-16,
    -6.056_329_612_869_256e-16,
    2.037_342_319_119_53e-15,
    -7.019_837_090_418_314e-15,
    2.477_154_424_481_304_3e-14,
    -8.976_705_182_324_994e-14,
    3.348_419_666_078_429e-13,
    -1.289_173_960_951_029e-12,
    5.139_639_673_481_73e-12,
    -2.129_967_838_427_568_4e-11,
    9.218_315_187_605_005e-11,
    -4.190_354_759_341_896_4e-10,
    2.015_049_755_197_032_8e-9,
    -1.034_576_246_567_809_7e-8,
    5.741_084_125_450_05e-8,
    -3.501_960_603_087_812_6e-7,
    2.406_484_947_837_217e-6,
    -1.936_197_974_166_083e-5,
    1.952_155_184_713_516_3e-4,
    -2.857_816_859_622_779_4e-3,
    1.039_237_365_768_172_4e-1,
    2.720_626_190_484_442_6,
];
