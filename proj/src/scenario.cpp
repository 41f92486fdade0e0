#include "arceval/scenario.hpp"

namespace arceval {

std::string SourceSpan::to_string() const {
    std::string out = file.empty() ? std::string("<input>") : file;
    out += ':';
    out += std::to_string(line);
    out += ':';
    out += std::to_string(column);
    return out;
}

bool operator==(const ContextScenario& a, const ContextScenario& b) {
    return a.id == b.id && a.seq == b.seq && a.quality == b.quality &&
           a.priority == b.priority && a.source == b.source &&
           a.stimulus == b.stimulus && a.environment == b.environment &&
           a.artefacts == b.artefacts && a.response == b.response &&
           a.measures == b.measures &&
           a.external_assessments == b.external_assessments;
}

}  // namespace arceval
