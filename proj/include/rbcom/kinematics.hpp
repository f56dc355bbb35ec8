#pragma once

#include <cstdint>

#include "rbcom/vec3.hpp"

namespace rbcom {

// Receiver motion and the per-round quantities it induces. Positions are the
// transmitter-to-receiver vector q [m]; one "round" is a full beam round trip.

// Position after one round: q' = q + (2 ||q|| / c) v.
Vec3 advance_position(const Vec3& q, const Vec3& v);

// cos of the angle between the receiver velocity and the line of sight,
// clamped to [-1, 1]. Throws std::domain_error if either vector has zero norm.
double direction_cosine(const Vec3& q, const Vec3& v);

// Carrier after one more round under the two-way Doppler factor:
// f' = f_prev * (1 - 2 * speed * cos_theta / c).
double next_frequency(double f_prev, double speed, double cos_theta);

// Round-trip flight time T = 2 ||q_prev|| / c  [s].
double round_duration(const Vec3& q_prev);

// Symbols that fit in one round at design bandwidth b1, fixed at the start:
// N = floor(4 * b1 * ||q0|| / c).
std::uint64_t symbols_per_frame(double b1, const Vec3& q0);

// Bandwidth that keeps N symbols per round at range ||q_prev||:
// B = N * c / (4 ||q_prev||)  [Hz].
double frame_bandwidth(std::uint64_t n_sym, const Vec3& q_prev);

}  // namespace rbcom
