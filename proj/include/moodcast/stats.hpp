#pragma once

#include <optional>
#include <span>

namespace moodcast::stats {

double mean(std::span<const double> xs);
/// Sample standard deviation (n - 1 denominator); 0 for fewer than two values.
double sample_sd(std::span<const double> xs);

/// Regularized incomplete beta I_x(a, b), via Lentz's continued fraction.
double incomplete_beta(double a, double b, double x);

/// Two-sided tail probability of Student's t with `df` degrees of freedom.
double student_t_two_sided_p(double t, double df);

struct TTest {
  double t = 0;
  double df = 0;
  double p = 1;
};

/// Welch's unequal-variance two-sample t-test. nullopt when either group has
/// fewer than two observations.
std::optional<TTest> welch_t_test(std::span<const double> a, std::span<const double> b);

}  // namespace moodcast::stats
