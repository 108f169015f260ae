#pragma once

#include <array>

namespace xxz::app::reference {

// Twelve-digit tabulated columns for L = 4, 8, ..., 1024.
using Column = std::array<double, 9>;

inline constexpr Column kTable1Exact{0.457106781187, 0.366669830087, 0.345995599194,
                                     0.340938243195, 0.339680713890, 0.339366755018,
                                     0.339288291732, 0.339268677562, 0.339263774123};
inline constexpr Column kTable1Cft{0.446378653269, 0.366041268056, 0.345956921753,
                                   0.340935835178, 0.339680563534, 0.339366745623,
                                   0.339288291145, 0.339268677525, 0.339263774121};
inline constexpr Column kTable2Exact{0.489830037812, 0.401639244141, 0.381525197365,
                                     0.376621871264, 0.375404791436, 0.375101148980,
                                     0.375025283711, 0.375006320673, 0.375001580150};
inline constexpr Column kTable2Cft{0.478556230132, 0.400889057533, 0.381472264383,
                                   0.376618066096, 0.375404516524, 0.375101129131,
                                   0.375025282283, 0.375006320571, 0.375001580143};
inline constexpr Column kTable3Exact{0.406774810601, 0.354315234931, 0.342922395530,
                                     0.340170924101, 0.339488945731, 0.339318816833,
                                     0.339276307427, 0.339265681501, 0.339263025109};
inline constexpr Column kTable3Cft = kTable1Cft;
inline constexpr Column kTable4Exact{0.400000000000, 0.381121448251, 0.376577662094,
                                     0.375405200439, 0.375102994373, 0.375025983614,
                                     0.375006526789, 0.375001635654, 0.375000409414};
inline constexpr Column kTable4Cft{0.452230707893, 0.394307676973, 0.379826919243,
                                   0.376206729811, 0.375301682453, 0.375075420613,
                                   0.375018855153, 0.375004713788, 0.375001178447};

inline constexpr double kNegativityInfXX = 0.339262139652;

}  // namespace xxz::app::reference
