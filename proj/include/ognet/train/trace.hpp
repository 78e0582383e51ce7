#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ognet/core/errors.hpp"
#include "ognet/nn/arch.hpp"

namespace ognet {

// One line of the loss trace: named loss components at a training step.
struct TraceEntry {
    Phase phase = Phase::one;
    int epoch = 0;
    int iteration = 0;
    std::vector<std::pair<std::string, double>> components;

    nlohmann::json to_json() const {
        nlohmann::json j = {{"phase", to_string(phase)}, {"epoch", epoch}, {"iteration", iteration}};
        for (const auto& [k, v] : components) j[k] = v;
        return j;
    }
};

// Appends trace entries to a line-delimited JSON file.
class TraceWriter {
public:
    TraceWriter() = default;

    explicit TraceWriter(const std::filesystem::path& path) : out_(path, std::ios::app) {
        if (!out_) throw IoError("cannot open loss trace " + path.string());
    }

    void append(const TraceEntry& e) {
        if (out_.is_open()) out_ << e.to_json().dump() << "\n";
    }

    void flush() {
        if (out_.is_open()) out_.flush();
    }

private:
    std::ofstream out_;
};

} // namespace ognet
