#pragma once

// Generated by scripts/gen_test_references.py; do not edit by hand.
// Multiprecision reference values (40 digits, rounded to double).

namespace refvals {

// {a, b, z, M(a,b,z)}
inline constexpr double kKummerM[][4] = {
    {0.5, 1.5, 0.25, 1.0899742083672443},
    {1.0, 2.0, 3.0, 6.361845641062556},
    {-2.5, 1.25, 4.0, 1.1407640066765554},
    {2.0, 0.75, -6.0, 0.005126562160348284},
    {3.5, 2.25, 10.0, 176038.96651604972},
    {-0.75, 3.5, 25.0, -80813.86487708514},
    {1.5, 4.75, -30.0, 0.03537115510145138},
    {0.25, 1.75, 45.0, 3.0107586579544492e+16},
};

// {a, b, z, U(a,b,z)}
inline constexpr double kKummerU[][4] = {
    {1.0, 1.0, 1.0, 0.5963473623231941},
    {0.5, 1.25, 2.0, 0.6747194958936807},
    {2.5, 0.75, 5.0, 0.00705629091145432},
    {-1.5, 2.25, 3.0, -0.8643575089168357},
    {0.75, 3.5, 10.0, 0.2026678713557128},
    {1.25, 2.75, 20.0, 0.02436311819755976},
    {2.0, 1.5, 30.0, 0.0010120619855062021},
    {0.5, 4.25, 40.0, 0.163730160831855},
    {-3.25, 1.75, 8.0, -8.87457769496767},
    {3.0, 0.5, 15.0, 0.0001667331472843526},
};

// {kind(0=M,1=W), kappa, mu, z, value}
inline constexpr double kWhittaker[][5] = {
    {0.0, 1.0, 1.0, 3.0, 2.340586894052157},
    {0.0, -0.5, 0.75, 6.0, 64.18245299359299},
    {0.0, 1.5, 0.25, 12.0, -2.865035882812613},
    {1.0, 0.5, 0.75, 2.0, 0.655523393049252},
    {1.0, 1.5, 1.0, 8.0, 0.4144355987196154},
    {1.0, -1.0, 0.5, 20.0, 2.07155748479365e-06},
};

// {nu, z, I_nu(z)}
inline constexpr double kBesselI[][3] = {
    {2.0, 3.0, 2.245212440929951},
    {0.5, 1.0, 0.9376748882454876},
    {7.25, 0.5, 5.19147292543187e-09},
    {3.75, 22.0, 221291462.43894598},
    {40.0, 55.0, 3.1373280671323756e+16},
};

} // namespace refvals
