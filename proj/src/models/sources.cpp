#include "models/sources.hpp"

namespace symred::models {

namespace {

const char* kNavierStokes = R"(# Incompressible viscous fluid with unit density.
space { independent x y z t; dependent u1 u2 u3 p; order 2; }

func alpha(t);
func beta(t);
func gam(t);
func a(t);
func f(x, y, z, t);
func q(x, y, z, t);
func fr(s, t);
func qr(s, t);
func h(x, y, t);
func pt(t);

param nu = 1 range [1/2, 2];
param k = 3/2 range [1/2, 2];
param c1 = 1/2 range [-1, 1];
param c2 = 1/3 range [-1, 1];
param b = 1/4 range [-1, 1];
param cxy = 3/4 range [-2, 2];

let r = (x^2 + y^2 + z^2)^(1/2);
let lap1 = d(u1,x,x) + d(u1,y,y) + d(u1,z,z);
let lap2 = d(u2,x,x) + d(u2,y,y) + d(u2,z,z);
let lap3 = d(u3,x,x) + d(u3,y,y) + d(u3,z,z);

system ns {
  eq ns1x: d(u1,t) + u1*d(u1,x) + u2*d(u1,y) + u3*d(u1,z) + d(p,x) - nu*lap1;
  eq ns1y: d(u2,t) + u1*d(u2,x) + u2*d(u2,y) + u3*d(u2,z) + d(p,y) - nu*lap2;
  eq ns1z: d(u3,t) + u1*d(u3,x) + u2*d(u3,y) + u3*d(u3,z) + d(p,z) - nu*lap3;
  eq ns2: d(u1,x) + d(u2,y) + d(u3,z);
}

system laplacian {
  eq lap_u1: lap1;
  eq lap_u2: lap2;
  eq lap_u3: lap3;
}

let lns_alpha = u3 + 2*k*z/t;
system lns {
  eq lns: diff(lns_alpha, t) + (k/t)*(x*diff(lns_alpha, x) + y*diff(lns_alpha, y) - 2*lns_alpha)
          - nu*(diff(lns_alpha, x, x) + diff(lns_alpha, y, y));
}

field B1 { xi = [alpha(t), 0, 0, 0]; phi = [d(alpha,t), 0, 0, -d(alpha,t,t)*x]; }
field B2 { xi = [0, beta(t), 0, 0]; phi = [0, d(beta,t), 0, -d(beta,t,t)*y]; }
field B3 { xi = [0, 0, gam(t), 0]; phi = [0, 0, d(gam,t), -d(gam,t,t)*z]; }
field T { xi = [0, 0, 0, 1]; }
field Q { phi = [0, 0, 0, 1]; }
field D { xi = [x, y, z, 2*t]; phi = [-u1, -u2, -u3, -2*p]; }
field L1 { xi = [0, z, -y, 0]; phi = [0, u3, -u2, 0]; }
field L2 { xi = [-z, 0, x, 0]; phi = [-u3, 0, u1, 0]; }
field L3 { xi = [y, -x, 0, 0]; phi = [u2, -u1, 0, 0]; }
field X { xi = [t^k, 0, 0, 0]; phi = [k*t^(k-1), 0, 0, -k*(k-1)*t^(k-2)*x]; }
field Y { xi = [0, t^k, 0, 0]; phi = [0, k*t^(k-1), 0, -k*(k-1)*t^(k-2)*y]; }
field S1 { phi = [u1, 0, 0, 0]; }

algebra ns_full { fields B1 B2 B3 T Q D L1 L2 L3; }
algebra rot3 { fields L1 L2 L3; }
algebra g2 { fields D L3 X Y; }

candidate Sl1 {
  u1 = f(x,y,z,t)*x; u2 = f(x,y,z,t)*y; u3 = f(x,y,z,t)*z; p = q(x,y,z,t);
}

candidate fp {
  u1 = fr(r,t)*x; u2 = fr(r,t)*y; u3 = fr(r,t)*z; p = qr(r,t);
  exclude r;
}

candidate sol {
  u1 = a(t)*x/r^3; u2 = a(t)*y/r^3; u3 = a(t)*z/r^3;
  p = d(a,t)/r - a(t)^2/(2*r^4) + b;
  exclude r;
  solution;
}

candidate S25S26 {
  u1 = k*x/t; u2 = k*y/t; u3 = c1/t^(1/2) - 2*k*z/t;
  p = (c1*t^(1/2)*z + k*(x^2 + y^2 + 4*c1*t^(1/2)*z - 2*z^2) - k^2*(x^2 + y^2 + 4*z^2) + 2*c2*t)/(2*t^2);
  box t = [1/2, 2];
  solution;
}

candidate example8_ns {
  u1 = k*x/t; u2 = k*y/t; u3 = -2*k*z/t + cxy*x*y;
  p = -k*(k-1)*(x^2 + y^2)/(2*t^2) - k*(2*k+1)*z^2/t^2 + pt(t);
  box t = [1/2, 2];
  solution;
}

candidate example8_ns_class {
  u1 = k*x/t; u2 = k*y/t; u3 = -2*k*z/t + h(x,y,t);
  p = -k*(k-1)*(x^2 + y^2)/(2*t^2) - k*(2*k+1)*z^2/t^2 + pt(t);
  box t = [1/2, 2];
}

candidate shear {
  u1 = x; u2 = 0; u3 = 0; p = 0;
}

plan default { count 20; min 12; seeds 1 2 3; }
)";

const char* kEuler = R"(# Incompressible inviscid fluid with unit density.
space { independent x y z t; dependent u1 u2 u3 p; order 1; }

func F(s1, s2);
func G(x, y, z, t);
func P(x, y, z, t);
func pt(t);

param k = 2 range [3/2, 3];
param lam = 2/3 range [1/2, 2];
param mu = 3/4 range [1/2, 2];

system euler {
  eq eul1x: d(u1,t) + u1*d(u1,x) + u2*d(u1,y) + u3*d(u1,z) + d(p,x);
  eq eul1y: d(u2,t) + u1*d(u2,x) + u2*d(u2,y) + u3*d(u2,z) + d(p,y);
  eq eul1z: d(u3,t) + u1*d(u3,x) + u2*d(u3,y) + u3*d(u3,z) + d(p,z);
  eq eul2: d(u1,x) + d(u2,y) + d(u3,z);
}

system e83_e86 {
  eq e83: t^2*d(p,x) + k*(k-1)*x;
  eq e84: t^2*d(p,y) + k*(k-1)*y;
  eq e85: d(u3,z) + 2*k/t;
  eq e86: d(u3,t) + u3*d(u3,z) + (k/t)*(x*d(u3,x) + y*d(u3,y)) + d(p,z);
}

field P1 { xi = [1, 0, 0, 0]; }
field P2 { xi = [0, 1, 0, 0]; }
field P3 { xi = [0, 0, 1, 0]; }
field K1 { xi = [t, 0, 0, 0]; phi = [1, 0, 0, 0]; }
field K2 { xi = [0, t, 0, 0]; phi = [0, 1, 0, 0]; }
field K3 { xi = [0, 0, t, 0]; phi = [0, 0, 1, 0]; }
field L1 { xi = [0, z, -y, 0]; phi = [0, u3, -u2, 0]; }
field L2 { xi = [-z, 0, x, 0]; phi = [-u3, 0, u1, 0]; }
field L3 { xi = [y, -x, 0, 0]; phi = [u2, -u1, 0, 0]; }
field T { xi = [0, 0, 0, 1]; }
field Q { phi = [0, 0, 0, 1]; }
field D1 { xi = [x, y, z, t]; }
field D2 { xi = [0, 0, 0, t]; phi = [-u1, -u2, -u3, -2*p]; }

algebra gal3 { fields K1 K2 K3; }
algebra euler_full { fields P1 P2 P3 K1 K2 K3 L1 L2 L3 T Q D1 D2; }

let N = mu^2*(1 + lam^2) + 1;
let sx1 = (lam*y - x)/t;
let sx2 = (lam*mu*z - x)/t;

candidate E1E2 {
  u3 = G(x,y,z,t);
  u1 = x/t - mu*lam*z/t + mu*lam*G(x,y,z,t);
  u2 = mu*G(x,y,z,t) + y/t - mu*z/t;
  p = P(x,y,z,t);
}

candidate SE {
  u1 = (x*(mu^2*(1 - 2*lam^2) + 1) - 3*lam*mu*(mu*y + z))/(t*N) + lam*mu*t^2*F(sx1, sx2);
  u2 = (y*(mu^2*(lam^2 - 2) + 1) - 3*mu*(lam*mu*x + z))/(t*N) + mu*t^2*F(sx1, sx2);
  u3 = (z*(mu^2*(1 + lam^2) - 2) - 3*(lam*x + y))/(t*N) + t^2*F(sx1, sx2);
  p = -3*mu^2/(t^2*(lam^2*mu^2 + mu^2 + 1))*(lam*x + y + z/mu)^2 + pt(t);
  exclude t;
  solution;
}

candidate example8_euler {
  u1 = k*x/t; u2 = k*y/t;
  u3 = -2*k*z/t + x^2*F(t*x^(-1/k), y/x);
  p = -k*(k-1)*(x^2 + y^2)/(2*t^2) - k*(2*k+1)*z^2/t^2 + pt(t);
  box x = [1/2, 2];
  solution;
}

candidate E81_class {
  u1 = k*x/t; u2 = k*y/t; u3 = G(x,y,z,t); p = P(x,y,z,t);
}

plan default { count 20; min 12; seeds 1 2 3; }
)";

const char* kIsentropic = R"(# Isentropic flow of a compressible ideal fluid; a is the sound speed.
space { independent x y z t; dependent u1 u2 u3 a; order 1; }

func W(t);
func A(t);
func lam(s1, s2);
func U(x, y, z, t);
func S(x, y, z, t);

param k = 2 range [3/2, 3];
param t0 = 1 range [1/2, 2];
param c = 1 range [1/2, 2];
param c1 = 1 range [1/2, 3/2];
param c2 = 1 range [1/2, 3/2];

system isentropic {
  eq if1x: d(u1,t) + u1*d(u1,x) + u2*d(u1,y) + u3*d(u1,z) + k*a*d(a,x);
  eq if1y: d(u2,t) + u1*d(u2,x) + u2*d(u2,y) + u3*d(u2,z) + k*a*d(a,y);
  eq if1z: d(u3,t) + u1*d(u3,x) + u2*d(u3,y) + u3*d(u3,z) + k*a*d(a,z);
  eq if2: d(a,t) + u1*d(a,x) + u2*d(a,y) + u3*d(a,z) + (a/k)*(d(u1,x) + d(u2,y) + d(u3,z));
}

system if12 {
  eq ax: d(a,x);
  eq ay: d(a,y);
  eq u3_eq: d(u3,t) + u3*d(u3,z) + (x/t)*d(u3,x) + (y/t)*d(u3,y) + k*a*d(a,z);
  eq a_eq: d(a,t) + u3*d(a,z) + (a/k)*(2/t + d(u3,z));
}

field P0 { xi = [0, 0, 0, 1]; }
field P1 { xi = [1, 0, 0, 0]; }
field P2 { xi = [0, 1, 0, 0]; }
field P3 { xi = [0, 0, 1, 0]; }
field K1 { xi = [t, 0, 0, 0]; phi = [1, 0, 0, 0]; }
field K2 { xi = [0, t, 0, 0]; phi = [0, 1, 0, 0]; }
field K3 { xi = [0, 0, t, 0]; phi = [0, 0, 1, 0]; }
field L1 { xi = [0, z, -y, 0]; phi = [0, u3, -u2, 0]; }
field L2 { xi = [-z, 0, x, 0]; phi = [-u3, 0, u1, 0]; }
field L3 { xi = [y, -x, 0, 0]; phi = [u2, -u1, 0, 0]; }
field F { xi = [x, y, z, t]; }
field G { xi = [0, 0, 0, -t]; phi = [u1, u2, u3, a]; }
field FG { xi = [x, y, z, 0]; phi = [u1, u2, u3, a]; }

algebra full12 {
  fields P0 P1 P2 P3 K1 K2 K3 L1 L2 L3 F G;
  combination K3_t0P3 = K3 + t0*P3;
}
algebra gal_p3 { fields K1 K2 K3 P3; combination K3_t0P3 = K3 + t0*P3; }
algebra if3 { fields L3 FG K1 K2; }

candidate IF4_class {
  u1 = x/t; u2 = y/t; u3 = U(x,y,z,t); a = S(x,y,z,t);
}

candidate IF5_class {
  u1 = x/t; u2 = y/t; u3 = z*W(t); a = z*A(t);
}

candidate IF11 {
  u1 = x/t; u2 = y/t; u3 = (z + lam(x/t, y/t))/(t + t0);
  a = c*(1/(t^2*(t + t0)))^(1/k);
  box t = [1/2, 2];
  solution;
}

let s = c1*t^3/3;
candidate example3_k_minus1 {
  u1 = x/t; u2 = y/t;
  u3 = z*c1*t^2*(besseli(-5/6; s) + c2*besseli(5/6; s))/(besseli(1/6; s) + c2*besseli(-1/6; s));
  a = z*c1*t^2;
  box t = [1/2, 3/2];
  requires k = -1; requires c1 = 1/2; requires c2 = 1;
  solution;
}

let Dk2 = t^4 + c1*t + c2;
candidate example3_k_minus2 {
  u1 = x/t; u2 = y/t;
  u3 = z*(4*t^3 + c1)/Dk2;
  a = z*2*sqrt(3)*sqrt(t^2/Dk2);
  box t = [3/5, 2];
  requires k = -2; requires c1 = 1; requires c2 = 1;
}

candidate example3_k_minus2_if6 {
  u1 = x/t; u2 = y/t;
  u3 = z*(4*t^3 + c1)/Dk2;
  a = z*sqrt(6*t^2/Dk2);
  box t = [3/5, 2];
  requires k = -2; requires c1 = 1; requires c2 = 1;
  solution;
}

plan default { count 20; min 12; seeds 1 2 3; }
)";

const char* kVnls = R"(# Vector nonlinear Schroedinger equation, psi_j = rho_j exp(i om_j).
space { independent x y t; dependent rho1 rho2 rho3 om1 om2 om3; order 2; }

param g1 = 1 range [1/2, 3/2];
param g2 = 1/2 range [1/4, 1];
param g3 = 1/3 range [1/4, 1];
param t0 = 1 range [1/2, 1];
param a1 = 1 range [1/2, 2];

let psi1 = rho1*exp(i*om1);
let psi2 = rho2*exp(i*om2);
let psi3 = rho3*exp(i*om3);
let mod2 = rho1^2 + rho2^2 + rho3^2;

system vnse {
  eq psi1: i*diff(psi1, t) + diff(psi1, x, x) + diff(psi1, y, y) - mod2*psi1;
  eq psi2: i*diff(psi2, t) + diff(psi2, x, x) + diff(psi2, y, y) - mod2*psi2;
  eq psi3: i*diff(psi3, t) + diff(psi3, x, x) + diff(psi3, y, y) - mod2*psi3;
}

field Px { xi = [1, 0, 0]; }
field Py { xi = [0, 1, 0]; }
field Rot { xi = [y, -x, 0]; phi = [0, 0, 0, a1, 0, 0]; }
field R0 { xi = [y, -x, 0]; }

algebra subSE { fields Px Py Rot; }
algebra rotation { fields R0; }

let lg = (g1^2/t0)*ln(t/(t - t0)) - (g2^2 + g3^2)*t;
candidate example4 {
  rho1 = g1/(t*(t - t0))^(1/2); rho2 = g2; rho3 = g3;
  om1 = x^2/(4*(t - t0)) + y^2/(4*t) + lg;
  om2 = lg; om3 = lg;
  exclude t; exclude t - t0;
  box t = [6/5, 3];
  solution;
}

let l0 = g1^2/t - (g2^2 + g3^2)*t;
candidate example4_t0_limit {
  rho1 = g1/t; rho2 = g2; rho3 = g3;
  om1 = (x^2 + y^2)/(4*t) + l0;
  om2 = l0; om3 = l0;
  exclude t;
  box t = [1/2, 3];
  solution;
}

candidate zero {
  rho1 = 0; rho2 = 0; rho3 = 0; om1 = 0; om2 = 0; om3 = 0;
  solution;
}

plan default { count 20; min 12; seeds 1 2 3; branch complex; }
)";

const char* kLaplace = R"(# Two-variable Laplace equation as a first order system.
space { independent x y; dependent u v w; order 1; }

param a = 2/3 range [-2, 2];
param b = -1/2 range [-2, 2];
param c = 1/5 range [-2, 2];

system le {
  eq le1: v - d(u,x);
  eq le2: d(v,y) - d(w,x);
  eq le3: w - d(u,y);
  eq le4: d(v,x) + d(w,y);
}

field Px { xi = [1, 0]; }
field Py { xi = [0, 1]; }

algebra trans2 { fields Px Py; }

candidate SLE { u = a*x + b*y + c; v = a; w = b; solution; }
candidate constant { u = c; v = 0; w = 0; solution; }

plan default { count 20; min 12; seeds 1 2 3; }
)";

const std::vector<Source> kSources = {
    {"navier_stokes", "incompressible Navier-Stokes equations", kNavierStokes},
    {"euler", "incompressible Euler equations", kEuler},
    {"isentropic", "isentropic compressible flow", kIsentropic},
    {"vnls3", "vector nonlinear Schroedinger equation", kVnls},
    {"laplace_fo", "first order Laplace system", kLaplace},
};

}  // namespace

const std::vector<Source>& sources() { return kSources; }

}  // namespace symred::models
