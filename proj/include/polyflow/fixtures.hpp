#pragma once

#include <array>

// Fixture polygons for the counterexample scenarios. Produced by
// tools/find_fixtures.cpp; regenerate with `find_fixtures --seed 2024`.

namespace polyflow::fixtures {

inline constexpr std::array<std::array<double, 2>, 6> kBoomerang{{
    {0.05006230335342135, -0.036768451720805256},
    {1.1386539754499285, -0.52009753269409931},
    {1.3845092349713977, -0.61946813538731005},
    {0.26221461471445334, 0.0068626101462629825},
    {1.3187372837902547, 0.62632361100883116},
    {1.1549239071440962, 0.53338110930186311},
}};

inline constexpr std::array<std::array<double, 2>, 9> kEmbeddedLoss{{
    {0.94523738918070499, 0.77571388377470984},
    {0.70755161734326477, 0.71595172115076078},
    {0.68606749999117533, 0.84911540724346657},
    {0.54492543637179947, 0.38724229602681859},
    {0.4909918005728785, 0.46187621147436952},
    {0.46650544761924606, 0.61611235608296122},
    {0.19531999599184213, 0.74078929506326796},
    {0.098506163152937254, 0.82536097720587487},
    {0.34186331049262908, 0.17309021447988038},
}};

inline constexpr std::array<std::array<double, 2>, 8> kElongated{{
    {0.80061853393330007, 0.047831006858188085},
    {0.78313928433001478, 0.047384265074613331},
    {-0.85646681831804883, -0.026136666802083985},
    {-0.60445224841306799, -0.075026254878712645},
    {0.09981335113060294, -0.094407619190153405},
    {0.13829975076910933, -0.093251378382914724},
    {0.89398920110449376, -0.019237171972875184},
    {0.90886192552124256, -0.0027133920699091317},
}};

}  // namespace polyflow::fixtures
