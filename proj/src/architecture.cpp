#include "arceval/architecture.hpp"

namespace arceval {

bool ArchApproach::supports_scenario(const std::string& scenario_id,
                                     QualityAttribute quality) const {
    for (const SupportRef& ref : supports) {
        if (ref.is_quality() ? ref.quality() == quality
                             : ref.scenario_id() == scenario_id)
            return true;
    }
    return false;
}

const Component* ArchitectureModel::find_component(const std::string& id) const {
    for (const Component& c : components) {
        if (c.id == id) return &c;
    }
    return nullptr;
}

bool ArchitectureModel::has_artefact(ArtefactRef a) const {
    for (const Component& c : components) {
        if (c.artefact == a) return true;
    }
    return false;
}

bool operator==(const ArchitectureModel& a, const ArchitectureModel& b) {
    return a.name == b.name && a.version_label == b.version_label &&
           a.components == b.components && a.approaches == b.approaches;
}

}  // namespace arceval
