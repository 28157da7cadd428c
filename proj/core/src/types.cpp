#include "rydsim/types.hpp"

namespace rydsim {

const char* to_string(Level level) {
    switch (level) {
        case Level::Q0: return "q0";
        case Level::Q1: return "q1";
        case Level::Ryd: return "ryd";
        case Level::Lost: return "lost";
    }
    return "?";
}

const char* to_string(Atom atom) {
    return atom == Atom::Control ? "control" : "target";
}

}  // namespace rydsim
