package corpus.gcd;

import java.math.BigInteger;

public class Divisors {

    public static int gcd(int a, int b) {
        while (b != 0) {
            int t = b;
            b = a % b;
            a = t;
        }
        return a;
    }

    public static long gcdRecursive(long a, long b) {
        return b == 0 ? a : gcdRecursive(b, a % b);
    }

    int greatestCommonDivisor(int first, int second) {
        if (second == 0) {
            return first;
        }
        return greatestCommonDivisor(second, first % second);
    }

    public static int hcf(int x, int y) {
        while (x != y) {
            if (x > y) {
                x = x - y;
            } else {
                y = y - x;
            }
        }
        return x;
    }

    static int euclid(int m, int n) {
        int r = m % n;
        while (r != 0) {
            m = n;
            n = r;
            r = m % n;
        }
        return n;
    }

    public int computeGcd(int[] values) {
        int result = values[0];
        for (int i = 1; i < values.length; i++) {
            int a = result;
            int b = values[i];
            while (b > 0) {
                int tmp = a % b;
                a = b;
                b = tmp;
            }
            result = a;
        }
        return result;
    }

    private static int g(int u, int v) {
        for (;;) {
            if (v == 0) {
                return Math.abs(u);
            }
            int w = u % v;
            u = v;
            v = w;
        }
    }

    public static BigInteger bigGcd(BigInteger a, BigInteger b) {
        while (!b.equals(BigInteger.ZERO)) {
            BigInteger t = b;
            b = a.mod(b);
            a = t;
        }
        return a;
    }

    public static int binaryGcd(int u, int v) {
        if (u == 0) {
            return v;
        }
        if (v == 0) {
            return u;
        }
        int shift = Integer.numberOfTrailingZeros(u | v);
        u >>= Integer.numberOfTrailingZeros(u);
        do {
            v >>= Integer.numberOfTrailingZeros(v);
            if (u > v) {
                int t = v;
                v = u;
                u = t;
            }
            v = v - u;
        } while (v != 0);
        return u << shift;
    }

    public static long commonDivisor(long p, long q) {
        long divisor = Math.min(p, q);
        long remainder = Math.max(p, q) % divisor;
        while (remainder != 0) {
            long next = divisor % remainder;
            divisor = remainder;
            remainder = next;
        }
        return divisor;
    }
}
