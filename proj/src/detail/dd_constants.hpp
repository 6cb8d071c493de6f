#pragma once

// Generated by scripts/gen_dd_constants.py; do not edit by hand.

namespace koenigs::detail {

inline constexpr double kInvGammaTaylor[][2] = {
    {1.0, 0.0},
    {0.5772156649015329, -4.942915152430645e-18},
    {-0.6558780715202539, 2.137185197068536e-17},
    {-0.04200263503409524, 1.4920306285650505e-18},
    {0.16653861138229148, 1.0189144546842026e-17},
    {-0.04219773455554433, -3.3579992682480134e-18},
    {-0.009621971527876973, -5.300031368830263e-19},
    {0.0072189432466631, -3.6006537063394283e-19},
    {-0.0011651675918590652, 5.659947853880981e-20},
    {-0.00021524167411495098, 2.3758686180729364e-21},
    {0.0001280502823881162, -9.359124499198967e-21},
    {-2.013485478078824e-05, 3.0488773972037385e-23},
    {-1.2504934821426706e-06, -2.66214092271898e-23},
    {1.133027231981696e-06, -4.622235212104869e-23},
    {-2.056338416977607e-07, -3.0061601618645134e-24},
    {6.116095104481416e-09, -2.693458298171306e-25},
    {5.002007644469223e-09, -1.538123614056751e-26},
    {-1.18127457048702e-09, -1.0052356155716208e-25},
    {1.0434267116911005e-10, -2.9298419956825035e-27},
    {7.782263439905071e-12, 4.397255556595848e-28},
    {-3.696805618642206e-12, 2.7050034921703885e-28},
    {5.100370287454476e-13, 2.253001461085878e-29},
    {-2.0583260535665066e-14, -1.4747481491954336e-30},
    {-5.348122539423018e-15, -1.6208384686356568e-31},
    {1.2267786282382608e-15, -5.072915146023867e-32},
    {-1.1812593016974588e-16, 6.422257838149681e-33},
    {1.1866922547516004e-18, -4.2037265494226014e-35},
    {1.4123806553180319e-18, -7.576946701116294e-35},
    {-2.29874568443537e-19, 1.3335481917069145e-36},
    {1.7144063219273374e-20, 5.230715150426935e-38},
    {1.337351730493693e-22, 2.6434059649079228e-39},
    {-2.0542335517666728e-22, 3.6856892424568953e-39},
    {2.736030048608e-23, -2.8599315416397774e-39},
    {-1.7323564459105165e-24, -1.7540883508197598e-40},
    {-2.3606190244992872e-26, -1.260225016995785e-42},
    {1.8649829417172943e-26, 8.774775617290965e-43},
    {-2.2180956242071973e-27, 6.809640315042753e-44},
    {1.2977819749479937e-28, -3.325692466804093e-45},
    {1.1806974749665284e-30, -4.184949275966516e-48},
    {-1.124584349277088e-30, -2.01842815487355e-47},
    {1.277085175140866e-31, 1.0535632367878753e-47},
    {-7.391451169615141e-33, 1.8114253268366145e-49},
    {1.1347502575542158e-35, -4.9791058715013306e-52},
    {4.639134641058722e-35, 2.6040634859975098e-52},
    {-5.3473368184391986e-36, -2.3112956912714733e-52},
    {3.2079959236133524e-37, 2.002602532430018e-53},
    {-4.4458297365507567e-39, -2.221752100199567e-55},
    {-1.3111745188819888e-39, 6.77884564695514e-56},
};

inline constexpr double kLn2[][2] = {
    {0.6931471805599453, 2.3190468138462996e-17},
};

inline constexpr double kPi[][2] = {
    {3.141592653589793, 1.2246467991473532e-16},
};

inline constexpr double kExpTaylor[][2] = {
    {1.0, 0.0},
    {1.0, 0.0},
    {0.5, 0.0},
    {0.16666666666666666, 9.25185853854297e-18},
    {0.041666666666666664, 2.3129646346357427e-18},
    {0.008333333333333333, 1.1564823173178714e-19},
    {0.001388888888888889, -5.300543954373577e-20},
    {0.0001984126984126984, 1.7209558293420705e-22},
    {2.48015873015873e-05, 2.1511947866775882e-23},
    {2.7557319223985893e-06, -1.858393274046472e-22},
    {2.755731922398589e-07, 2.3767714622250297e-23},
    {2.505210838544172e-08, -1.448814070935912e-24},
    {2.08767569878681e-09, -1.20734505911326e-25},
    {1.6059043836821613e-10, 1.2585294588752098e-26},
    {1.1470745597729725e-11, 2.0655512752830745e-28},
    {7.647163731819816e-13, 7.03872877733453e-30},
    {4.779477332387385e-14, 4.399205485834081e-31},
    {2.8114572543455206e-15, 1.6508842730861433e-31},
    {1.5619206968586225e-16, 1.1910679660273754e-32},
    {8.22063524662433e-18, 2.2141894119604265e-34},
    {4.110317623312165e-19, 1.4412973378659527e-36},
    {1.9572941063391263e-20, -1.3643503830087908e-36},
    {8.896791392450574e-22, -7.911402614872376e-38},
    {3.868170170630684e-23, -8.843177655482344e-40},
    {1.6117375710961184e-24, -3.6846573564509766e-41},
};

} // namespace koenigs::detail
