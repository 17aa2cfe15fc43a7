#pragma once

#include <cstddef>

#include "ttd/td/experience_buffer.hpp"
#include "ttd/td/td_config.hpp"

namespace ttd {

/// r + gamma * U(x_{t+1}) - U(x_t)
double td0_error(double reward, double utility_next, double utility_current,
                 double gamma);

/// Truncated TD(lambda) return of the record at `oldest_index`, propagated
/// backwards from the newest record. The newest step bootstraps with gamma
/// alone (lambda = 0 there); every other step k uses its lambda_override when
/// present, otherwise config.lambda.
double truncated_return(const ExperienceBuffer& buffer, std::size_t oldest_index,
                        const TdConfig& config);

/// TTD(lambda, m) return for the oldest record of a full buffer.
/// Throws BufferNotFull when fewer than config.m records are held.
double ttd_return_iterative(const ExperienceBuffer& buffer, const TdConfig& config);

/// Smallest m with (gamma*lambda)^m < ratio * gamma*lambda.
std::size_t choose_m(double gamma_lambda, double ratio = 0.1);

}  // namespace ttd
