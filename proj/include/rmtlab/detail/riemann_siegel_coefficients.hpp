#pragma once

// Taylor coefficients of the Riemann-Siegel correction functions C_0..C_4
// in powers of (p - 1/2), where p is the fractional part of sqrt(t / 2pi).
// Generated at 60 digits from Psi(p) = cos(2pi(p^2 - p - 1/16)) / cos(2pi p)
// and its derivatives; truncated once |c_n| 2^-n < 1e-22.

namespace rmtlab::specialfn::detail {

inline constexpr double kC0[] = {
    3.826834323650897717e-1, 0.0, 1.748961872310081797,
    0.0, 2.118025207685496373, 0.0,
    -8.707216670511480739e-1, 0.0, -3.473311224346516707,
    0.0, -1.66269473089993245, 0.0,
    1.216731288919232134, 0.0, 1.301430416100797577,
    0.0, 3.051102182736167242e-2, 0.0,
    -3.755803051545095243e-1, 0.0, -1.085784416564065974e-1,
    0.0, 5.183290299954962338e-2, 0.0,
    2.999948061990227592e-2, 0.0, -2.275939670612564226e-3,
    0.0, -4.382647416580338306e-3, 0.0,
    -4.064230183729846993e-4, 0.0, 4.006097785422113928e-4,
    0.0, 8.971057991388841298e-5, 0.0,
    -2.302565002723910712e-5, 0.0, -9.380006601906792485e-6,
    0.0, 6.323514947609107504e-7, 0.0,
    6.551022819231501666e-7, 0.0, 2.210523745552697259e-8,
    0.0, -3.322316176445628835e-8,
};

inline constexpr double kC1[] = {
    0.0, -5.365020525675069406e-2, 0.0,
    1.102781874108148244e-1, 0.0, 1.231720015431522631,
    0.0, 1.263496486279945788, 0.0,
    -1.695108997559503018, 0.0, -2.999871196765010089,
    0.0, -1.081994495989920864e-1, 0.0,
    1.940766294621271269, 0.0, 7.838423561500686533e-1,
    0.0, -5.054829667900365919e-1, 0.0,
    -3.845072349605797405e-1, 0.0, 3.747264646531532068e-2,
    0.0, 9.092026610973176317e-2, 0.0,
    1.044923755006450922e-2, 0.0, -1.25829796515834165e-2,
    0.0, -3.399503721151274085e-3, 0.0,
    1.041095053771489127e-3, 0.0, 5.01094905111848686e-4,
    0.0, -3.95635966900318156e-5, 0.0,
    -4.762459245357189639e-5, 0.0, -1.853935533808513227e-6,
    0.0, 3.193691808006897204e-6, 0.0,
    4.090780760850606633e-7, 0.0, -1.544662433257663213e-7,
};

inline constexpr double kC2[] = {
    5.188542830293168494e-3, 0.0, 1.237863355225389841e-3,
    0.0, -1.813750572516699741e-1, 0.0,
    1.429149274853212654e-1, 0.0, 1.330339176668756533,
    0.0, 3.522472353403733678e-1, 0.0,
    -2.421001595891950724, 0.0, -1.676078702253810885,
    0.0, 1.368941672332837218, 0.0,
    1.553901943022298322, 0.0, -1.722164273472998052e-1,
    0.0, -6.359068055045430989e-1, 0.0,
    -9.911649873041208105e-2, 0.0, 1.403348006738700895e-1,
    0.0, 4.782352019827292236e-2, 0.0,
    -1.73560406414797808e-2, 0.0, -1.022501253402859184e-2,
    0.0, 9.274149159794887899e-4, 0.0,
    1.357219437237338535e-3, 0.0, 6.41369012029388009e-5,
    0.0, -1.230080569819662988e-4, 0.0,
    -1.831350740478920255e-5, 0.0, 7.821628604322627309e-6,
    0.0, 2.00875424847599455e-6, 0.0,
    -3.353276539318571374e-7, 0.0, -1.461602091741823093e-7,
};

inline constexpr double kC3[] = {
    0.0, -2.679432181438913809e-3, 0.0,
    2.995372109103514964e-2, 0.0, -4.257017254182869799e-2,
    0.0, -2.899796577980388751e-1, 0.0,
    4.888831999235445973e-1, 0.0, 1.230855876395746081,
    0.0, -8.297560708527408704e-1, 0.0,
    -2.249763536666566867, 0.0, 7.845139961005471379e-2,
    0.0, 1.7467492800868894, 0.0,
    4.596808097974993511e-1, 0.0, -6.619353471039774946e-1,
    0.0, -3.159044103617363458e-1, 0.0,
    1.284479254520749599e-1, 0.0, 1.00733827166261523e-1,
    0.0, -9.53018384882526776e-3, 0.0,
    -1.92644216875140889e-2, 0.0, -1.246463715876929171e-3,
    0.0, 2.424396964110308574e-3, 0.0,
    4.376476977418570183e-4, 0.0, -2.071403268700179128e-4,
    0.0, -6.274344504186515561e-5, 0.0,
    1.157534381459566935e-5, 0.0, 5.883854924540379784e-6,
    0.0, -3.124677400696336221e-7, 0.0,
    -4.024065775498959501e-7,
};

inline constexpr double kC4[] = {
    4.648338936176338185e-4, 0.0, -4.022642946136188304e-3,
    0.0, 3.847177051796126884e-3, 0.0,
    6.581175135809486002e-2, 0.0, -1.960412434369444912e-1,
    0.0, -2.085405368635885324e-1, 0.0,
    9.507754185141750946e-1, 0.0, 5.341535312914873976e-1,
    0.0, -1.67634944117634008, 0.0,
    -1.076747157875128993, 0.0, 1.235339301656596985,
    0.0, 1.025782534005727577, 0.0,
    -4.012409579398854438e-1, 0.0, -5.036663995108303448e-1,
    0.0, 3.573487795502744986e-2, 0.0,
    1.443176308678541662e-1, 0.0, 1.509152741790346942e-2,
    0.0, -2.609887477919436132e-2, 0.0,
    -6.126628379519261749e-3, 0.0, 3.077503129870841185e-3,
    0.0, 1.156247893408875232e-3, 0.0,
    -2.277596675847212747e-4, 0.0, -1.418963711818144443e-4,
    0.0, 7.464860307955919453e-6, 0.0,
    1.247970164540911662e-5, 0.0, 4.863945184002094619e-7,
    0.0, -8.210237414123167234e-7,
};

}  // namespace rmtlab::specialfn::detail
