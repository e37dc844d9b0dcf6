#pragma once

#include <stdexcept>
#include <string>

namespace maam {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvariantError : Error {
    using Error::Error;
};

struct ParseError : Error {
    int line;
    ParseError(int line_, const std::string& reason)
        : Error("parse error at line " + std::to_string(line_) + ": " + reason), line(line_) {}
};

struct DegenerateSegment : Error {
    using Error::Error;
};

struct SubdivisionLimit : Error {
    using Error::Error;
};

struct HorizontalOrientation : Error {
    using Error::Error;
};

// A collision-free orientation could not be found even after enlarging the
// sampling cap to 90 degrees; the waypoint is unprintable.
struct NoFeasibleOrientation : Error {
    int waypoint_index;
    NoFeasibleOrientation(int idx)
        : Error("no collision-free orientation for waypoint " + std::to_string(idx)),
          waypoint_index(idx) {}
};

struct EmptyColumn : Error {
    int waypoint_index;
    EmptyColumn(int idx)
        : Error("graph column empty at waypoint " + std::to_string(idx)), waypoint_index(idx) {}
};

struct NoPath : Error {
    int waypoint_index;
    NoPath(int idx)
        : Error("graph disconnected at waypoint " + std::to_string(idx)), waypoint_index(idx) {}
};

}  // namespace maam
