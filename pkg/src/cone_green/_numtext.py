"""Text form of Gaussian rationals, shared by both kernel backends."""

from fractions import Fraction


def format_parts(re, im):
    """'a/b+c/d*i' with both parts in lowest terms."""
    sign = "+" if im >= 0 else "-"
    im = abs(im)
    return "%d/%d%s%d/%d*i" % (re.numerator, re.denominator, sign, im.numerator, im.denominator)


def parse_parts(text):
    """Parse 'a/b+c/d*i' and the looser forms '3/2', '-2+i', 'i', '1-2/3*i'.

    Returns the pair (real, imag) of Fractions.
    """
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty number")
    cut = None
    for k in range(len(s) - 1, 0, -1):
        if s[k] in "+-" and s[k - 1] not in "/eE":
            cut = k
            break
    if cut is not None and s.endswith("i"):
        re_txt, im_txt = s[:cut], s[cut:]
    elif s.endswith("i"):
        re_txt, im_txt = "0", s
    else:
        re_txt, im_txt = s, None
    re = Fraction(re_txt)
    im = Fraction(0)
    if im_txt is not None:
        body = im_txt[:-1]
        if body.endswith("*"):
            body = body[:-1]
        if body in ("", "+"):
            im = Fraction(1)
        elif body == "-":
            im = Fraction(-1)
        else:
            im = Fraction(body)
    return re, im
