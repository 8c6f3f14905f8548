#pragma once

#include <stdexcept>
#include <string>

namespace logbench {

// Raised when a pipeline stage fails; carries the stage name so callers can
// report which step broke.
class StageError : public std::runtime_error {
public:
    StageError(std::string stage, const std::string& message)
        : std::runtime_error("[" + stage + "] " + message), stage_(std::move(stage)) {}

    const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

}  // namespace logbench
