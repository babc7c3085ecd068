#pragma once

#include "nlw/profile.hpp"

namespace nlw {

// int_{r0}^{r1} r^e dr, including e = -1.
double power_integral(double e, double r0, double r1);

// int u r^m dr over one segment
double seg_moment(const Segment& s, double m);
// int u^2 r^m dr
double seg_sq_moment(const Segment& s, double m);
// int u'^2 r^m dr
double seg_grad_sq_moment(const Segment& s, double m);

// Surface measure of the unit sphere in R^d.
double sphere_area(int d);

// Whole-profile versions, summed over segments.
double moment(const RadialProfile& u, double m);
double sq_moment(const RadialProfile& u, double m);
double grad_sq_moment(const RadialProfile& u, double m);

}  // namespace nlw
