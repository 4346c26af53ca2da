#pragma once

// The 20-item structured-requirements corpus used by both the unit suite and
// the acceptance suite. It covers the five template shapes, complex
// combinations, comma-free triggers and the explicit precondition delimiter.

#include "sace/reqlang.hpp"

#include <string>
#include <vector>

namespace sace_test {

struct CorpusItem {
    std::string text;
    sace::req::Template expected;
};

inline const std::vector<CorpusItem>& requirement_corpus() {
    using sace::req::Template;
    static const std::vector<CorpusItem> corpus = {
        {"While the robot is moving, when a person is present, the robot shall issue an audible warning",
         Template::Complex},
        {"The AV shall maintain sufficient distance between itself and any vehicle in front in order to "
         "provide enough time to react if the car in front suddenly brakes",
         Template::Ubiquitous},
        {"The excavator shall ensure maximum tilting angle is never exceeded", Template::Ubiquitous},
        {"The alarms and warnings function of the autonomous insulin infusion pump shall not unnecessarily "
         "distract or disturb ICU nurses from their other tasks",
         Template::Ubiquitous},
        {"The pump shall log all infusion events", Template::Ubiquitous},
        {"If the long range sensors fail, then the shuttle shall limit speed to 5 km/h",
         Template::UnwantedBehaviour},
        {"When a person is present, the robot shall reduce speed to 0.3 m/s", Template::EventDriven},
        {"When a delivery is requested the robot shall compute a route to the destination",
         Template::EventDriven},
        {"While the robot is charging, the robot shall remain stationary", Template::StateDriven},
        {"While carrying a package, the robot shall limit acceleration to 0.5 m/s2", Template::StateDriven},
        {"Where the lidar option is included, the robot shall cross-check camera detections against lidar "
         "returns",
         Template::OptionalFeature},
        {"Where remote supervision is included the robot shall report its position every second",
         Template::OptionalFeature},
        {"If an obstacle is detected in the planned path, then the robot shall stop within 0.5 m",
         Template::UnwantedBehaviour},
        {"If the battery level falls below 10 percent, then the robot shall return to the charging station",
         Template::UnwantedBehaviour},
        {"While the robot is moving, where the audible warning option is included, the robot shall sound "
         "periodic alerts",
         Template::Complex},
        {"When a door opens, while the robot is in the corridor, the robot shall yield to persons entering",
         Template::Complex},
        {"When an operator issues a stop command the robot shall halt within 1 s", Template::EventDriven},
        {"The robot shall maintain a minimum separation of 0.5 m from any person", Template::Ubiquitous},
        {"When entering a junction -- a person is detected, the robot shall give way", Template::EventDriven},
        {"While in the reduced operating domain, when a person is present, the robot shall not exceed "
         "0.25 m/s",
         Template::Complex},
    };
    return corpus;
}

}  // namespace sace_test
