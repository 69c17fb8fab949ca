//! Frozen Taylor coefficients for the Riemann–Siegel correction terms.
//!
//! `RS_Ck_TAYLOR[n]` is the coefficient of uⁿ in the expansion of C_k about
//! the midpoint, u = p − 1/2, where p is the fractional part of √(t/2π).
//! C₀(p) = Ψ(p) = cos(2π(p² − p − 1/16)) / cos(2πp), and C₁..C₅ follow from
//! the standard derivative recurrences.  The arrays were generated offline in
//! 60-digit arithmetic and trimmed where |coeff|·2⁻ⁿ drops below ~10⁻²².
//! With |u| ≤ 1/2 the truncation is far below the 10⁻¹² the evaluator needs.

pub(crate) const RS_C0_TAYLOR: [f64; 47] = [
    0.3826834323650898, 0.0, 1.7489618723100817,
    0.0, 2.118025207685496, 0.0,
    -0.8707216670511481, 0.0, -3.4733112243465167,
    0.0, -1.6626947308999325, 0.0,
    1.216731288919232, 0.0, 1.3014304161007977,
    0.0, 0.03051102182736167, 0.0,
    -0.3755803051545095, 0.0, -0.1085784416564066,
    0.0, 0.051832902999549624, 0.0,
    0.029999480619902277, 0.0, -0.0022759396706125644,
    0.0, -0.004382647416580339, 0.0,
    -0.0004064230183729847, 0.0, 0.0004006097785422114,
    0.0, 8.971057991388841e-05, 0.0,
    -2.3025650027239108e-05, 0.0, -9.380006601906792e-06,
    0.0, 6.323514947609108e-07, 0.0,
    6.551022819231502e-07, 0.0, 2.210523745552697e-08,
    0.0, -3.322316176445629e-08,
];

pub(crate) const RS_C1_TAYLOR: [f64; 48] = [
    0.0, -0.053650205256750697, 0.0,
    0.11027818741081483, 0.0, 1.2317200154315227,
    0.0, 1.2634964862799458, 0.0,
    -1.695108997559503, 0.0, -2.9998711967650102,
    0.0, -0.10819944959899208, 0.0,
    1.9407662946212714, 0.0, 0.7838423561500687,
    0.0, -0.5054829667900366, 0.0,
    -0.38450723496057976, 0.0, 0.03747264646531532,
    0.0, 0.09092026610973176, 0.0,
    0.01044923755006451, 0.0, -0.012582979651583417,
    0.0, -0.003399503721151274, 0.0,
    0.0010410950537714891, 0.0, 0.0005010949051118486,
    0.0, -3.956359669003182e-05, 0.0,
    -4.7624592453571896e-05, 0.0, -1.8539355338085133e-06,
    0.0, 3.1936918080068973e-06, 0.0,
    4.0907807608506065e-07, 0.0, -1.5446624332576631e-07,
];

pub(crate) const RS_C2_TAYLOR: [f64; 51] = [
    0.005188542830293168, 0.0, 0.0012378633552253898,
    0.0, -0.18137505725166997, 0.0,
    0.14291492748532125, 0.0, 1.3303391766687565,
    0.0, 0.3522472353403734, 0.0,
    -2.421001595891951, 0.0, -1.6760787022538108,
    0.0, 1.3689416723328371, 0.0,
    1.5539019430222982, 0.0, -0.1722164273472998,
    0.0, -0.6359068055045431, 0.0,
    -0.09911649873041208, 0.0, 0.14033480067387008,
    0.0, 0.04782352019827292, 0.0,
    -0.017356040641479782, 0.0, -0.010225012534028593,
    0.0, 0.0009274149159794888, 0.0,
    0.0013572194372373386, 0.0, 6.41369012029388e-05,
    0.0, -0.0001230080569819663, 0.0,
    -1.83135074047892e-05, 0.0, 7.821628604322627e-06,
    0.0, 2.0087542484759946e-06, 0.0,
    -3.3532765393185714e-07, 0.0, -1.4616020917418232e-07,
];

pub(crate) const RS_C3_TAYLOR: [f64; 88] = [
    0.0, -0.0026794321814389136, 0.0,
    0.02995372109103515, 0.0, -0.042570172541828696,
    0.0, -0.28997965779803886, 0.0,
    0.4888831999235446, 0.0, 1.230855876395746,
    0.0, -0.8297560708527408, 0.0,
    -2.249763536666567, 0.0, 0.07845139961005472,
    0.0, 1.7467492800868893, 0.0,
    0.45968080979749937, 0.0, -0.6619353471039775,
    0.0, -0.31590441036173633, 0.0,
    0.12844792545207495, 0.0, 0.10073382716626152,
    0.0, -0.009530183848825268, 0.0,
    -0.019264421687514088, 0.0, -0.001246463715876929,
    0.0, 0.0024243969641103086, 0.0,
    0.000437647697741857, 0.0, -0.00020714032687001792,
    0.0, -6.274344504186516e-05, 0.0,
    1.157534381459567e-05, 0.0, 5.88385492454038e-06,
    0.0, -3.124677400696241e-07, 0.0,
    -4.024065775496849e-07, 0.0, -1.1991107790262216e-08,
    0.0, 2.0963754164597222e-08, 0.0,
    2.0203581870757915e-09, 0.0, -8.439685371187473e-10,
    0.0, -1.3791486855322378e-10, 0.0,
    4.627187473471429e-11, 0.0, 4.302431960006689e-10,
    0.0, 8.735385077987255e-09, 0.0,
    1.7891897895350156e-07, 0.0, 3.6403037367387852e-06,
    0.0, 7.36039395325885e-05, 0.0,
    0.0014793992228886697, 0.0, 0.029567757161866957,
    0.0, 0.5877850767467946, 0.0,
    11.625081661526844, 0.0, 228.7985340851759,
    0.0, 4482.143757685549, 0.0,
    87414.37824898795,
];

pub(crate) const RS_C4_TAYLOR: [f64; 85] = [
    0.00046483389361763383, 0.0, -0.004022642946136188,
    0.0, 0.003847177051796127, 0.0,
    0.06581175135809486, 0.0, -0.19604124343694448,
    0.0, -0.20854053686358853, 0.0,
    0.9507754185141751, 0.0, 0.5341535312914873,
    0.0, -1.67634944117634, 0.0,
    -1.076747157875129, 0.0, 1.235339301656597,
    0.0, 1.0257825340057276, 0.0,
    -0.40124095793988546, 0.0, -0.5036663995108304,
    0.0, 0.03573487795502745, 0.0,
    0.14431763086785418, 0.0, 0.01509152741790347,
    0.0, -0.026098874779194363, 0.0,
    -0.006126628379519262, 0.0, 0.003077503129870841,
    0.0, 0.0011562478934088753, 0.0,
    -0.00022775966758472127, 0.0, -0.00014189637118181445,
    0.0, 7.4648603079556425e-06, 0.0,
    1.2479701645402158e-05, 0.0, 4.863945182283442e-07,
    0.0, -8.210237455930698e-07, 0.0,
    -9.22326842427957e-08, 0.0, 4.103450539804509e-08,
    0.0, 7.6375848503121e-09, 0.0,
    -2.818844610162203e-09, 0.0, -2.9737913128251952e-08,
    0.0, -6.625004768720061e-07, 0.0,
    -1.4840873028360018e-05, 0.0, -0.00032939211457311225,
    0.0, -0.007247442198021455, 0.0,
    -0.15815070579408577, 0.0, -3.4241579414821226,
    0.0, -73.58693744458549, 0.0,
    -1570.2463777112057, 0.0, -33281.26579031034,
    0.0, -700860.6378666733, 0.0,
    -14668612.66211016,
];

pub(crate) const RS_C5_TAYLOR: [f64; 86] = [
    0.0, 0.00022686811845742952, 0.0,
    0.0011081246853701038, 0.0, -0.01621857925553935,
    0.0, 0.05276503405402178, 0.0,
    0.02570880200878795, 0.0, -0.3805866044083264,
    0.0, 0.22531987892755623, 0.0,
    1.0344573316506498, 0.0, -0.5528257697067991,
    0.0, -1.5287712641098066, 0.0,
    0.32828366427818745, 0.0, 1.229110218541741,
    0.0, 0.04093693938297919, 0.0,
    -0.5586040472649426, 0.0, -0.11241976368068894,
    0.0, 0.1521267771181536, 0.0,
    0.05173718845533645, 0.0, -0.025612276897040168,
    0.0, -0.012963672514060777, 0.0,
    0.0025455574818644727, 0.0, 0.0021193319510901783,
    0.0, -9.191391945170448e-05, 0.0,
    -0.00024413466533867607, 0.0, -1.3697982688029405e-05,
    0.0, 2.0620785150327873e-05, 0.0,
    2.817727346267761e-06, 0.0, -1.29735117819555e-06,
    0.0, -2.834307397955202e-07, 0.0,
    1.155192656402308e-07, 0.0, 1.4232614698426717e-06,
    0.0, 3.495929252816101e-05, 0.0,
    0.0008601176309106838, 0.0, 0.020907482717671486,
    0.0, 0.5024600313896161, 0.0,
    11.945946844797147, 0.0, 281.1261742037555,
    0.0, 6551.905073735362, 0.0,
    151295.8102002659, 0.0, 3463152.3549336507,
    0.0, 78610493.04599, 0.0,
    1770191226.6743498, 0.0, 141860.76323597407,
    0.0, 2899204.676100579,
];

