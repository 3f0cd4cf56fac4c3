#pragma once

#include "hsd/actions.hpp"
#include "hsd/geometry.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace hsd {

// Environment snapshot handed to the models at each decode round. Carries
// everything a policy needs so that token prediction is a pure function of
// (observation, token context).
struct Observation {
    Vec3 gripper;
    bool gripper_closed = false;
    Vec3 object;
    bool grasped = false;
    Vec3 goal;
    bool target_gripper_closed = false;
    std::string task_id;
    int task_index = 0;
    int step_index = 0;
};

// The verification-side model: greedy argmax token prediction plus access to
// the final-layer input features of the current step.
class VerifierModel {
public:
    virtual ~VerifierModel() = default;

    // Greedy token for every position of `chain` in one call. Position i is
    // conditioned on (context, chain[0..i)), i.e. the draft is teacher-forced.
    // `context` holds the tokens of the partially emitted action slice.
    virtual std::vector<int> verify_chain(const std::vector<int>& context, const Observation& obs,
                                          const std::vector<int>& chain) const = 0;

    // Greedy next token given just the context (one autoregressive step).
    virtual int greedy_next(const std::vector<int>& context, const Observation& obs) const = 0;

    // Final-layer input feature vector for the current step, unit norm.
    virtual std::vector<double> features(const Observation& obs) const = 0;
};

// The drafting-side model. Deterministic given (context, observation, seed);
// the generator is reseeded per episode.
class DrafterModel {
public:
    virtual ~DrafterModel() = default;

    // Exactly `length` tokens in [0, K-1].
    virtual std::vector<int> generate(const std::vector<int>& context, const Observation& obs,
                                      int length) = 0;

    virtual double cost_per_token() const = 0;

    virtual void reseed(std::uint64_t seed) = 0;
};

// Minimal environment surface the decoding loop drives.
class Environment {
public:
    virtual ~Environment() = default;

    virtual Observation observe() const = 0;
    virtual void apply(const ActionSlice& action) = 0;
    virtual bool done() const = 0;
    virtual bool success() const = 0;
    virtual int steps() const = 0;
};

} // namespace hsd
