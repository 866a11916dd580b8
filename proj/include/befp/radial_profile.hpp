#pragma once

#include "befp/radial_grid.hpp"

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace befp {

/// Which side of the change of variables a profile lives on.
enum class ProfileKind {
    befp,  ///< phi(r) = r f(r), f a Bose-Einstein-Fokker-Planck density
    fp,    ///< psi(r) = r g(r), g a linear Fokker-Planck density
};

std::string to_string(ProfileKind kind);
ProfileKind profile_kind_from_string(const std::string& s);

/// A radially symmetric density on R^2 sampled as r * density on a
/// RadialGrid, plus an optional point mass at the origin.
///
/// `atom` is the mass of the origin atom divided by 2 pi, so that the total
/// mass of the 2D density is 2 pi (atom + int_0^inf values dr).
class RadialProfile
{
public:
    RadialProfile(RadialGrid grid, std::vector<double> values, double atom, ProfileKind kind);

    /// Samples r * density(r) at every node.
    static RadialProfile from_density(RadialGrid grid, const std::function<double(double)>& density,
                                      ProfileKind kind, double atom = 0.0);
    static RadialProfile zero(RadialGrid grid, ProfileKind kind);

    const RadialGrid& grid() const { return grid_; }
    const std::vector<double>& values() const { return values_; }
    double atom() const { return atom_; }
    ProfileKind kind() const { return kind_; }
    std::size_t size() const { return values_.size(); }

    /// Density values values_i / r_i; the origin value is extrapolated
    /// using that the density is even in r.
    std::vector<double> density() const;
    double density_at_origin() const;
    /// Cubic interpolation of the density, mirrored across r = 0.
    double density_at(double r) const;

    /// 2 pi (atom + int values dr).
    double mass() const;
    /// max_i values_i.
    double max_value() const;

private:
    RadialGrid grid_;
    std::vector<double> values_;
    double atom_;
    ProfileKind kind_;
};

/// Running integral of a profile including the atom jump at r = 0:
/// Q(r) = atom + int_0^r values ds, in units of mass / (2 pi).
struct CumulativeProfile
{
    RadialGrid grid;
    std::vector<double> values;
    ProfileKind kind;

    double at_origin() const { return values.front(); }
    double total() const { return values.back(); }
};

CumulativeProfile cumulate(const RadialProfile& p);

/// 2 pi int |a - b| dr + 2 pi |atom_a - atom_b|.
double l1_distance(const RadialProfile& a, const RadialProfile& b);

/// CSV with a `# atom=<float> kind=<befp|fp>` header line and rows `r,value`.
void write_profile_csv(std::ostream& os, const RadialProfile& p);
void write_profile_csv(const std::string& path, const RadialProfile& p);
RadialProfile read_profile_csv(std::istream& is);
RadialProfile read_profile_csv(const std::string& path);

}  // namespace befp
