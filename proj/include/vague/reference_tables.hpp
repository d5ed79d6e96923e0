// Golden values for the bundled reference scenario, rounded to two decimals
// (the joint prior to three). The `tables` command and the regression tests
// diff freshly computed tables against these.

#pragma once

#include <array>

namespace vague::reference {

inline constexpr int domain_size = 9;
inline constexpr int message_count = 6;
inline constexpr int observation_count = 9;

inline constexpr std::array<const char*, message_count> message_names = {
    "exactly 4", "between 3 and 5", "between 2 and 6",
    "between 1 and 7", "between 0 and 8", "around 4",
};

inline constexpr std::array<const char*, observation_count> observation_names = {
    "=4", "u_3_5", "u_2_6", "u_1_7", "u_0_8", "p_3_5", "p_2_6", "p_1_7", "p_0_8",
};

// Worked example: the hypothetical speaker distribution...
inline constexpr std::array<double, domain_size> example_speaker_po = {
    0.00, 0.01, 0.01, 0.16, 0.64, 0.16, 0.01, 0.01, 0.00,
};

// ...and the literal posteriors it is scored against (uniform world prior,
// uniform radius prior on 0..4).
inline constexpr std::array<double, domain_size> example_posterior_between_1_7 = {
    0.00, 0.14, 0.14, 0.14, 0.14, 0.14, 0.14, 0.14, 0.00,
};
inline constexpr std::array<double, domain_size> example_posterior_around_4 = {
    0.04, 0.08, 0.12, 0.16, 0.20, 0.16, 0.12, 0.08, 0.04,
};

inline constexpr double example_kl_around = 0.65;
inline constexpr double example_kl_between = 0.89;

// Observation conditionals P(x | o); columns follow observation_names.
inline constexpr std::array<std::array<double, observation_count>, domain_size>
    observation_conditionals = {{
        {0.00, 0.00, 0.00, 0.00, 0.11, 0.00, 0.00, 0.00, 0.00},
        {0.00, 0.00, 0.00, 0.14, 0.11, 0.00, 0.00, 0.02, 0.03},
        {0.00, 0.00, 0.20, 0.14, 0.11, 0.00, 0.06, 0.09, 0.11},
        {0.00, 0.33, 0.20, 0.14, 0.11, 0.25, 0.25, 0.23, 0.22},
        {1.00, 0.33, 0.20, 0.14, 0.11, 0.50, 0.38, 0.31, 0.27},
        {0.00, 0.33, 0.20, 0.14, 0.11, 0.25, 0.25, 0.23, 0.22},
        {0.00, 0.00, 0.20, 0.14, 0.11, 0.00, 0.06, 0.09, 0.11},
        {0.00, 0.00, 0.00, 0.14, 0.11, 0.00, 0.00, 0.02, 0.03},
        {0.00, 0.00, 0.00, 0.00, 0.11, 0.00, 0.00, 0.00, 0.00},
    }};

inline constexpr std::array<double, observation_count> observation_weights = {
    1, 4, 16, 64, 256, 1, 4, 16, 64,
};

// Normalized observation probabilities (exact fractions over 426).
inline constexpr std::array<double, observation_count> observation_probabilities = {
    1.0 / 426, 4.0 / 426, 16.0 / 426, 64.0 / 426, 256.0 / 426,
    1.0 / 426, 4.0 / 426, 16.0 / 426, 64.0 / 426,
};

// Marginal prior over x induced by the observation mixture.
inline constexpr std::array<double, domain_size> prior_x = {
    0.07, 0.09, 0.12, 0.14, 0.16, 0.14, 0.12, 0.09, 0.07,
};

// Joint prior P(x, o), three decimals.
inline constexpr std::array<std::array<double, observation_count>, domain_size> joint_prior = {{
    {0.000, 0.000, 0.000, 0.000, 0.067, 0.000, 0.000, 0.000, 0.001},
    {0.000, 0.000, 0.000, 0.021, 0.067, 0.000, 0.000, 0.001, 0.005},
    {0.000, 0.000, 0.008, 0.021, 0.067, 0.000, 0.001, 0.004, 0.016},
    {0.000, 0.003, 0.008, 0.021, 0.067, 0.001, 0.002, 0.009, 0.033},
    {0.002, 0.003, 0.008, 0.021, 0.067, 0.001, 0.004, 0.012, 0.041},
    {0.000, 0.003, 0.008, 0.021, 0.067, 0.001, 0.002, 0.009, 0.033},
    {0.000, 0.000, 0.008, 0.021, 0.067, 0.000, 0.001, 0.004, 0.016},
    {0.000, 0.000, 0.000, 0.021, 0.067, 0.000, 0.000, 0.001, 0.005},
    {0.000, 0.000, 0.000, 0.000, 0.067, 0.000, 0.000, 0.000, 0.001},
}};

// Literal listener L0(x | m); columns follow message_names.
inline constexpr std::array<std::array<double, message_count>, domain_size> l0 = {{
    {0.00, 0.00, 0.00, 0.00, 0.07, 0.02},
    {0.00, 0.00, 0.00, 0.11, 0.09, 0.06},
    {0.00, 0.00, 0.17, 0.13, 0.12, 0.11},
    {0.00, 0.32, 0.21, 0.17, 0.14, 0.18},
    {1.00, 0.36, 0.23, 0.18, 0.16, 0.25},
    {0.00, 0.32, 0.21, 0.17, 0.14, 0.18},
    {0.00, 0.00, 0.17, 0.13, 0.12, 0.11},
    {0.00, 0.00, 0.00, 0.11, 0.09, 0.06},
    {0.00, 0.00, 0.00, 0.00, 0.07, 0.02},
}};

// Level-1 speaker S1(m | o); rows follow observation_names.
inline constexpr std::array<std::array<double, message_count>, observation_count> s1 = {{
    {1.00, 0.00, 0.00, 0.00, 0.00, 0.00},
    {0.00, 0.98, 0.01, 0.00, 0.00, 0.01},
    {0.00, 0.00, 0.82, 0.07, 0.02, 0.09},
    {0.00, 0.00, 0.00, 0.69, 0.16, 0.15},
    {0.00, 0.00, 0.00, 0.00, 0.93, 0.07},
    {0.00, 0.97, 0.01, 0.00, 0.00, 0.01},
    {0.00, 0.00, 0.68, 0.06, 0.01, 0.25},
    {0.00, 0.00, 0.00, 0.27, 0.06, 0.66},
    {0.00, 0.00, 0.00, 0.00, 0.14, 0.86},
}};

// Level-1 listener L1(x | m).
inline constexpr std::array<std::array<double, message_count>, domain_size> l1 = {{
    {0.00, 0.00, 0.00, 0.00, 0.10, 0.02},
    {0.00, 0.00, 0.00, 0.13, 0.11, 0.05},
    {0.00, 0.00, 0.18, 0.14, 0.11, 0.11},
    {0.00, 0.32, 0.21, 0.15, 0.12, 0.19},
    {1.00, 0.37, 0.23, 0.16, 0.12, 0.24},
    {0.00, 0.32, 0.21, 0.15, 0.12, 0.19},
    {0.00, 0.00, 0.18, 0.14, 0.11, 0.11},
    {0.00, 0.00, 0.00, 0.13, 0.11, 0.05},
    {0.00, 0.00, 0.00, 0.00, 0.10, 0.02},
}};

// Level-5 speaker S5(m | o).
inline constexpr std::array<std::array<double, message_count>, observation_count> s5 = {{
    {1.00, 0.00, 0.00, 0.00, 0.00, 0.00},
    {0.00, 0.96, 0.01, 0.00, 0.00, 0.03},
    {0.00, 0.00, 0.78, 0.03, 0.00, 0.19},
    {0.00, 0.00, 0.00, 0.87, 0.08, 0.06},
    {0.00, 0.00, 0.00, 0.00, 1.00, 0.00},
    {0.00, 0.96, 0.01, 0.00, 0.00, 0.03},
    {0.00, 0.00, 0.41, 0.01, 0.00, 0.57},
    {0.00, 0.00, 0.00, 0.05, 0.00, 0.94},
    {0.00, 0.00, 0.00, 0.00, 0.01, 0.99},
}};

// Level-5 listener L5(x | m).
inline constexpr std::array<std::array<double, message_count>, domain_size> l5 = {{
    {0.00, 0.00, 0.00, 0.00, 0.11, 0.00},
    {0.00, 0.00, 0.00, 0.14, 0.11, 0.03},
    {0.00, 0.00, 0.18, 0.14, 0.11, 0.11},
    {0.00, 0.32, 0.21, 0.15, 0.11, 0.22},
    {1.00, 0.37, 0.22, 0.15, 0.11, 0.27},
    {0.00, 0.32, 0.21, 0.15, 0.11, 0.22},
    {0.00, 0.00, 0.18, 0.14, 0.11, 0.11},
    {0.00, 0.00, 0.00, 0.14, 0.11, 0.03},
    {0.00, 0.00, 0.00, 0.00, 0.11, 0.00},
}};

}  // namespace vague::reference
