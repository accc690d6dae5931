#include "frobtau/genus.hpp"

namespace ft {

// Genus-two free energy of a semisimple Frobenius manifold in canonical
// coordinates. u[i,s] = d^s u_i/dx^s, U[i,j] = u_i - u_j, h[i] = psi_{i1}.
// Five entries carry u_ij powers restored by homogeneity (weight -1 in u, -2 in x).
const std::vector<std::string>& genus2_terms() {
    static const std::vector<std::string> terms = {
        "1/1152*u[i,4]/(u[i,1]^2*h[i]^2)",
        "-7/1920*u[i,2]*u[i,3]/(u[i,1]^3*h[i]^2)",
        "1/360*u[i,2]^3/(u[i,1]^4*h[i]^2)",
        "1/40*V[i,j]^2*u[i,3]/(U[i,j]*u[i,1]*h[i]^2)",
        "1/640*V[i,j]*h[j]*u[j,1]*u[i,3]/(U[i,j]*u[i,1]^2*h[i]^3)",
        "-19/2880*V[i,j]*u[i,3]*h[j]/(U[i,j]*u[i,1]*h[i]^3)",
        "1/1152*V[i,j]*u[i,3]*h[i]/(U[i,j]*u[j,1]*h[j]^3)",
        "7/40*V[i,j]^2*V[i,k]^2*u[i,2]/(U[i,j]*U[i,k]*h[i]^2)",
        "-1/240*V[i,j]^2*V[i,k]*u[i,2]*h[k]*(32*u[i,1]-7*u[k,1])/(U[i,j]*U[i,k]*u[i,1]*h[i]^3)",
        "1/40*V[i,j]*V[j,k]^2*u[i,2]*h[i]/(U[i,j]*U[j,k]*h[j]^3)",
        "-1/48*V[i,j]*V[j,k]^2*u[j,1]*u[i,2]/(U[i,j]*U[j,k]*u[i,1]*h[i]*h[j])",
        "-3/64*V[i,j]^2*u[i,2]/(U[i,j]^2*h[i]^2)",
        "-11/480*V[i,j]^2*u[i,2]^2/(U[i,j]*u[i,1]^2*h[i]^2)",
        "29/5760*V[i,j]*V[j,k]*u[i,2]*h[i]*h[k]*(u[k,1]-2*u[j,1])/(U[i,j]*U[j,k]*u[j,1]*h[j]^4)",
        "1/1920*V[i,j]*V[i,k]*u[i,2]*h[j]*h[k]*(54*u[i,1]^2-25*u[i,1]*u[j,1]-u[j,1]*u[k,1])/(U[i,j]*U[i,k]*u[i,1]^2*h[i]^4)",
        "1/384*V[i,j]*V[i,k]*u[i,2]*h[k]*(u[i,1]-u[k,1])/(U[i,j]*U[i,k]*u[j,1]*h[j]^3)",
        "-1/384*V[i,k]*V[j,k]*u[k,1]*u[i,2]*h[i]/(U[i,k]*U[j,k]*u[j,1]*h[j]^3)",
        "1/576*V[i,j]*V[j,k]*u[i,2]*h[k]*(2*u[j,1]-u[k,1])/(U[i,j]*U[j,k]*u[i,1]*h[i]*h[j]^2)",
        "-1/5760*V[i,j]*V[j,k]*u[k,1]*u[i,2]*h[k]*(27*u[i,1]+u[k,1])/(U[j,k]*U[i,k]*u[i,1]^2*h[i]^3)",
        "-19/1920*V[i,j]*V[j,k]*u[i,2]*h[k]/(U[i,j]*U[i,k]*h[i]^3)",
        "1/5760*V[i,j]*V[j,k]*h[k]*(27*u[i,1]*u[k,1]-u[j,1]^2+2*u[j,1]*u[k,1])*u[i,2]/(U[i,j]*U[j,k]*u[i,1]^2*h[i]^3)",
        "1/288*V[i,j]*V[j,k]*u[i,2]*h[i]/(U[j,k]*U[i,k]*h[k]^3)",
        "1/384*V[i,j]*V[j,k]*u[i,1]*u[i,2]*h[i]/(U[i,j]*U[i,k]*u[k,1]*h[k]^3)",
        "-1/576*V[i,j]*V[j,k]*u[k,1]*u[i,2]/(U[j,k]*U[i,k]*u[i,1]*h[i]*h[k])",
        "1/1920*V[i,j]*u[i,2]^2*h[j]*(11*u[i,1]-5*u[j,1])/(U[i,j]*u[i,1]^3*h[i]^3)",
        "-1/5760*V[i,j]*u[i,2]*u[j,2]*h[j]/(U[i,j]*u[i,1]^2*h[i]^3)",
        "1/5760*V[i,j]*u[i,2]*h[j]*(57*u[i,1]^2-27*u[i,1]*u[j,1]-u[j,1]^2)/(U[i,j]^2*u[i,1]^2*h[i]^3)",
        "1/1152*V[i,j]*u[i,2]*h[i]*(4*u[j,1]-3*u[i,1])/(U[i,j]^2*u[j,1]*h[j]^3)",
        "-1/576*V[i,j]*u[j,1]*u[i,2]/(U[i,j]^2*u[i,1]*h[i]*h[j])",
        "-1/1152*V[i,j]*u[i,2]*u[j,2]/(U[i,j]*u[i,1]*u[j,1]*h[i]*h[j])",
        "1/10*V[i,j]^2*V[i,k]^2*V[i,l]^2*u[i,1]^2/(U[i,j]*U[i,k]*U[i,l]*h[i]^2)",
        "-7/20*V[i,j]^2*V[i,k]^2*V[i,l]*h[l]*u[i,1]^2/(U[i,j]*U[i,k]*U[i,l]*h[i]^3)",
        "7/40*V[i,j]^2*V[i,k]^2*V[i,l]*h[l]*u[i,1]*u[l,1]/(U[i,j]*U[i,k]*U[i,l]*h[i]^3)",
        "-1/8*V[i,j]^2*V[i,k]*V[k,l]^2*u[i,1]*u[k,1]/(U[i,j]*U[i,k]*U[k,l]*h[i]*h[k])",
        "1/40*V[i,j]^2*V[i,k]*V[k,l]*h[l]*(u[k,1]^2-3*u[i,1]^2-2*u[k,1]*u[l,1])/(U[i,j]*U[i,k]*U[k,l]*h[i]^3)",
        "3/40*V[i,j]^2*V[i,k]*V[k,l]*u[i,1]*u[l,1]*h[l]/(U[i,j]*U[i,k]*U[i,l]*h[i]^3)",
        "1/40*V[i,j]^2*V[i,k]*V[k,l]*h[l]*(3*u[i,1]^2+u[l,1]^2)/(U[i,j]*U[k,l]*U[i,l]*h[i]^3)",
        "1/48*V[i,j]^2*V[i,k]*V[k,l]*h[l]*u[i,1]*(2*u[k,1]-u[l,1])/(U[i,j]*U[i,k]*U[k,l]*h[i]*h[k]^2)",
        "5/96*V[i,j]^2*V[i,k]*V[i,l]*h[k]*h[l]*(4*u[i,1]^2-4*u[i,1]*u[k,1]+u[k,1]*u[l,1])/(U[i,j]*U[i,k]*U[i,l]*h[i]^4)",
        "-83/480*V[i,j]^2*V[i,k]^2*u[i,1]^2/(U[i,j]*U[i,k]^2*h[i]^2)",
        "1/144*V[i,j]*V[i,k]*V[j,l]*V[k,l]*u[i,1]^2/(U[i,k]*U[j,l]*U[i,l]*h[i]^2)",
        "-1/144*V[i,j]*V[i,k]*V[j,l]*V[k,l]*u[i,1]^2/(U[i,j]*U[i,k]*U[k,l]*h[i]^2)",
        "-1/48*V[i,j]^2*V[i,k]*V[k,l]*u[i,1]*u[l,1]/(U[i,j]*U[k,l]*U[i,l]*h[i]*h[l])",
        "29/1920*V[i,j]*V[i,k]*V[j,l]*h[k]*h[l]*(u[k,1]*u[l,1]-u[i,1]*u[k,1]+2*u[i,1]^2-u[i,1]*u[l,1])/(U[i,j]*U[i,k]*U[i,l]*h[i]^4)",
        "-29/5760*V[i,j]*V[i,k]*V[j,l]*h[k]*h[l]*u[l,1]^2*(2*u[i,1]-u[k,1])/(U[i,k]*U[j,l]*U[i,l]*h[i]^4*u[i,1])",
        "-29/5760*V[i,j]*V[i,k]*V[j,l]*h[k]*h[l]*u[j,1]*(2*u[k,1]*u[l,1]+2*u[i,1]*u[j,1]-u[j,1]*u[k,1]-4*u[i,1]*u[l,1])/(U[i,j]*U[i,k]*U[j,l]*h[i]^4*u[i,1])",
        "-1/1152*V[i,j]*V[i,k]*V[j,l]*h[k]*h[l]*(4*u[i,1]*u[j,1]-4*u[i,1]*u[l,1]+u[k,1]*u[l,1])/(U[i,j]*U[i,k]*U[j,l]*h[i]^2*h[j]^2)",
        "-1/384*V[i,j]*V[i,k]*V[j,l]*h[l]*(u[i,1]*u[j,1]^2-2*u[j,1]*u[i,1]*u[l,1])/(U[i,j]*U[i,k]*U[j,l]*u[k,1]*h[k]^3)",
        "1/1152*V[i,j]*V[i,k]*V[j,l]*h[l]*u[i,1]^2*(u[i,1]-3*u[l,1])/(U[i,j]*U[i,k]*U[i,l]*u[k,1]*h[k]^3)",
        "-1/384*V[i,j]*V[i,k]*V[j,l]*h[l]*u[i,1]*u[l,1]^2/(U[i,k]*U[j,l]*U[i,l]*u[k,1]*h[k]^3)",
        "-1/1152*V[i,j]*V[i,k]*V[j,l]*h[l]*u[j,1]^2*(3*u[l,1]-2*u[j,1])/(U[i,j]*U[j,l]*U[j,k]*u[k,1]*h[k]^3)",
        "-1/288*V[i,j]*V[i,k]*V[j,l]*h[l]*u[j,1]*(u[j,1]-2*u[l,1])/(U[i,k]*U[j,l]*U[j,k]*h[k]^3)",
        "1/576*V[i,j]*V[i,k]*V[j,l]*h[l]*u[k,1]*(2*u[k,1]-3*u[l,1])/(U[i,k]*U[j,k]*U[k,l]*h[k]^3)",
        "-1/1152*V[i,j]*V[i,k]*V[j,l]*h[l]*u[l,1]^3/(U[j,l]*U[k,l]*U[i,l]*u[k,1]*h[k]^3)",
        "1/288*V[i,j]*V[i,k]*V[j,l]*h[l]*u[l,1]^2/(U[i,k]*U[j,l]*U[k,l]*h[k]^3)",
        "-1/576*V[i,j]*V[i,k]*V[j,l]*h[k]*u[l,1]*(u[k,1]-2*u[i,1])/(U[i,k]*U[j,l]*U[i,l]*h[i]^2*h[l])",
        "-1/1152*V[i,j]*V[i,k]*V[j,l]*u[k,1]*u[l,1]/(U[i,k]*U[j,l]*U[k,l]*h[k]*h[l])",
        "-7/1440*V[i,j]*V[i,k]*V[i,l]*h[j]*h[k]*h[l]*(8*u[i,1]^3-12*u[i,1]^2*u[j,1]-u[j,1]*u[k,1]*u[l,1]+6*u[i,1]*u[j,1]*u[k,1])/(U[i,j]*U[i,k]*U[i,l]*h[i]^5*u[i,1])",
        "-29/1152*V[i,j]*V[i,k]*V[j,k]*u[i,1]^2/(U[i,j]*U[i,k]^2*h[i]^2)",
        "-1/320*V[i,j]^2*V[i,k]*h[k]*(3*u[i,1]^2-8*u[k,1]^2)/(U[i,j]*U[i,k]^2*h[i]^3)",
        "-53/1920*V[i,j]^2*V[i,k]*h[k]*u[i,1]*u[k,1]/(U[i,j]*U[i,k]*U[j,k]*h[i]^3)",
        "-V[i,j]^2*V[i,k]*u[i,1]*h[k]/(U[i,j]^2*U[j,k]*h[i]^3)*(27/640*u[k,1]-233/2880*u[i,1])",
        "-V[i,j]^2*V[i,k]*u[i,1]*h[k]/(U[i,k]^2*U[j,k]*h[i]^3)*(233/2880*u[i,1]-67/960*u[k,1])",
        "1/1152*V[i,j]^2*V[i,k]*h[i]*u[i,1]^3/(U[i,j]*U[i,k]^2*u[k,1]*h[k]^3)",
        "-1/576*V[i,j]^2*V[i,k]*h[i]*u[i,1]^3/(U[i,j]^2*U[i,k]*u[k,1]*h[k]^3)",
        "-1/48*V[i,j]^2*V[i,k]*u[i,1]*u[k,1]/(U[i,j]*U[i,k]^2*h[i]*h[k])",
        "233/1440*V[i,j]^3*h[j]*u[i,1]^2/(U[i,j]^3*h[i]^3)",
        "-43/384*V[i,j]^3*h[j]*u[i,1]*u[j,1]/(U[i,j]^3*h[i]^3)",
        "-1/12*V[i,j]^3*u[i,1]*u[j,1]/(U[i,j]^3*h[i]*h[j])",
        "29/5760*V[i,j]*V[i,k]*u[j,1]*u[k,1]*h[j]*h[k]*(u[k,1]-6*u[i,1])/(U[i,j]*U[i,k]^2*u[i,1]*h[i]^4)",
        "29/5760*V[i,j]*V[i,k]*h[j]*h[k]*(3*u[i,1]*u[k,1]+3*u[j,1]*u[k,1]+6*u[i,1]*u[j,1]-6*u[i,1]^2-2*u[j,1]^2)/(U[i,j]^2*U[i,k]*h[i]^4)",
        "1/576*V[i,j]*V[i,k]*u[j,1]*h[k]*(2*u[i,1]-u[k,1])/(U[i,j]^2*U[i,k]*h[i]^2*h[j])",
        "1/1152*V[i,j]*V[i,k]*U[i,j]*h[k]*(3*u[i,1]^2*u[k,1]-3*u[i,1]*u[k,1]^2+u[k,1]^3-u[i,1]^3)/(U[i,k]^2*U[j,k]^2*u[j,1]*h[j]^3)",
        "1/576*V[i,j]*V[i,k]*U[i,k]*h[k]*(-u[i,1]^3+3*u[j,1]^2*u[k,1]-4*u[i,1]*u[j,1]*u[k,1]+2*u[i,1]^2*u[j,1]-2*u[j,1]^3)/(U[i,j]^2*U[j,k]^2*u[j,1]*h[j]^3)",
        "1/384*V[i,j]*V[i,k]*h[k]*(-u[i,1]*u[k,1]^2+u[i,1]^3-6*u[j,1]^2*u[k,1])/(U[i,j]*U[j,k]^2*u[j,1]*h[j]^3)",
        "1/288*V[i,j]*V[i,k]*h[k]*(4*u[i,1]*u[j,1]*u[k,1]+u[j,1]*u[k,1]^2-2*u[i,1]^2*u[j,1]+3*u[j,1]^3)/(U[i,j]*U[j,k]^2*u[j,1]*h[j]^3)",
        "1/384*V[i,j]*V[i,k]*h[k]*(2*u[i,1]*u[k,1]^2-u[i,1]^2*u[k,1]-u[k,1]^3)/(U[i,k]*U[j,k]^2*u[j,1]*h[j]^3)",
        "1/288*V[i,j]*V[i,k]*h[k]*(u[j,1]*u[k,1]^2-2*u[i,1]*u[j,1]*u[k,1]+u[i,1]^2*u[j,1])/(U[i,k]*U[j,k]^2*u[j,1]*h[j]^3)",
        "1/384*V[i,j]*V[i,k]*h[k]*u[i,1]^2*u[k,1]/(U[i,j]^2*U[j,k]*u[j,1]*h[j]^3)",
        "-1/576*V[i,j]*V[i,k]*u[j,1]*u[k,1]/(U[i,k]*U[j,k]^2*h[j]*h[k])",
        "1/1152*V[i,j]^2*u[i,1]*(37*u[i,1]*u[j,1]*h[j]^2+10*u[i,1]*u[j,1]*h[i]^2-3*u[i,1]^2*h[i]^2+11*u[j,1]^2*h[j]^2)/(U[i,j]^3*u[j,1]*h[i]^2*h[j]^2)",
        "-1/576*V[i,j]*h[j]*(4*u[i,1]^3+4*u[i,1]*u[j,1]^2-6*u[i,1]^2*u[j,1]-u[j,1]^3)/(U[i,j]^3*u[i,1]*h[i]^3)",
        "1/576*V[i,j]*u[i,1]*u[j,1]/(U[i,j]^3*h[i]*h[j])",
    };
    return terms;
}

}  // namespace ft
