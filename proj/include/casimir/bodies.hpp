#pragma once

#include <cmath>
#include <string>
#include <variant>
#include <vector>

#include "casimir/constants.hpp"
#include "casimir/error.hpp"

namespace casimir {

// Bodies live on the z axis: finite bodies are centered at the origin,
// half-spaces and slabs carry offsets, a point atom carries its z position.

struct Ball {
    double radius = 1.0;
};

struct Cube {
    double side = 1.0;
};

/// Infinite solid cylinder along z; extensive quantities are reported per
/// unit axial length. All pair-measure work happens on the disk cross
/// section with the axially pre-integrated kernel.
struct Cylinder {
    double radius = 1.0;
    bool per_unit_length = true;
};

/// side = -1: occupies z <= offset; side = +1: occupies z >= offset.
struct HalfSpace {
    double offset = 0.0;
    int side = -1;
};

/// Occupies offset <= z <= offset + thickness.
struct Slab {
    double thickness = 1.0;
    double offset = 0.0;
};

struct PointAtom {
    double position = 0.0;  // z coordinate
    double alpha = 1.0;     // its own static polarizability
};

using Body = std::variant<Ball, Cube, Cylinder, HalfSpace, Slab, PointAtom>;

inline void validate(const Body& body) {
    struct V {
        void operator()(const Ball& b) const {
            if (!(b.radius > 0.0)) throw domain_error("Ball: radius must be positive");
        }
        void operator()(const Cube& b) const {
            if (!(b.side > 0.0)) throw domain_error("Cube: side must be positive");
        }
        void operator()(const Cylinder& b) const {
            if (!(b.radius > 0.0)) throw domain_error("Cylinder: radius must be positive");
        }
        void operator()(const HalfSpace& b) const {
            if (b.side != 1 && b.side != -1)
                throw domain_error("HalfSpace: side must be +1 or -1");
        }
        void operator()(const Slab& b) const {
            if (!(b.thickness > 0.0)) throw domain_error("Slab: thickness must be positive");
        }
        void operator()(const PointAtom& b) const {
            if (!(b.alpha >= 0.0)) throw domain_error("PointAtom: alpha must be >= 0");
        }
    };
    std::visit(V{}, body);
}

inline std::string body_name(const Body& body) {
    struct V {
        std::string operator()(const Ball&) const { return "ball"; }
        std::string operator()(const Cube&) const { return "cube"; }
        std::string operator()(const Cylinder&) const { return "cylinder"; }
        std::string operator()(const HalfSpace&) const { return "half-space"; }
        std::string operator()(const Slab&) const { return "slab"; }
        std::string operator()(const PointAtom&) const { return "point-atom"; }
    };
    return std::visit(V{}, body);
}

/// Spatial dimension of the pair-measure problem: 2 for the cylinder cross
/// section, 3 otherwise.
inline int pair_measure_dimension(const Body& body) {
    return std::holds_alternative<Cylinder>(body) ? 2 : 3;
}

/// Largest pair separation within the body (cross-section diameter for the
/// cylinder). Throws for unbounded bodies.
inline double body_diameter(const Body& body) {
    struct V {
        double operator()(const Ball& b) const { return 2.0 * b.radius; }
        double operator()(const Cube& b) const { return b.side * std::sqrt(3.0); }
        double operator()(const Cylinder& b) const { return 2.0 * b.radius; }
        double operator()(const HalfSpace&) const {
            throw capability_error("half-space has no finite diameter");
        }
        double operator()(const Slab&) const {
            throw capability_error("slab has no finite diameter");
        }
        double operator()(const PointAtom&) const { return 0.0; }
    };
    return std::visit(V{}, body);
}

/// Volume (area per unit length for the cylinder). Throws for unbounded
/// bodies and points.
inline double body_measure(const Body& body) {
    struct V {
        double operator()(const Ball& b) const {
            return 4.0 / 3.0 * constants::pi * b.radius * b.radius * b.radius;
        }
        double operator()(const Cube& b) const { return b.side * b.side * b.side; }
        double operator()(const Cylinder& b) const {
            return constants::pi * b.radius * b.radius;
        }
        double operator()(const HalfSpace&) const {
            throw capability_error("half-space has no finite measure");
        }
        double operator()(const Slab&) const {
            throw capability_error("slab has no finite measure");
        }
        double operator()(const PointAtom&) const {
            throw capability_error("point atom has no measure");
        }
    };
    return std::visit(V{}, body);
}

/// Interval endpoints on which P(r) is smooth. The cube's kinks sit at
/// a, a*sqrt(2), a*sqrt(3); ball and disk need a single interval.
inline std::vector<double> pair_density_breakpoints(const Body& body) {
    struct V {
        std::vector<double> operator()(const Ball& b) const {
            return {0.0, 2.0 * b.radius};
        }
        std::vector<double> operator()(const Cube& b) const {
            return {0.0, b.side, b.side * std::sqrt(2.0), b.side * std::sqrt(3.0)};
        }
        std::vector<double> operator()(const Cylinder& b) const {
            return {0.0, 2.0 * b.radius};
        }
        std::vector<double> operator()(const HalfSpace&) const {
            throw capability_error("no pair density for a half-space");
        }
        std::vector<double> operator()(const Slab&) const {
            throw capability_error("no pair density for a slab");
        }
        std::vector<double> operator()(const PointAtom&) const {
            throw capability_error("no pair density for a point atom");
        }
    };
    return std::visit(V{}, body);
}

} // namespace casimir
