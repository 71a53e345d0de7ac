package corpus.primes;

import java.math.BigInteger;
import java.util.*;

public class Factorization {

    public static List<Integer> primeFactors(int n) {
        List<Integer> factors = new ArrayList<>();
        for (int i = 2; i <= n / i; i++) {
            while (n % i == 0) {
                factors.add(i);
                n /= i;
            }
        }
        if (n > 1) {
            factors.add(n);
        }
        return factors;
    }

    public List<Long> factorize(long number) {
        List<Long> result = new LinkedList<>();
        long value = number;
        for (long d = 2; d * d <= value; d++) {
            while (value % d == 0) {
                result.add(d);
                value = value / d;
            }
        }
        if (value != 1) {
            result.add(value);
        }
        return result;
    }

    static Map<Integer, Integer> factorCounts(int n) {
        Map<Integer, Integer> counts = new TreeMap<>();
        int p = 2;
        while (n > 1) {
            if (n % p == 0) {
                counts.merge(p, 1, Integer::sum);
                n /= p;
            } else {
                p++;
            }
        }
        return counts;
    }

    // prints the decomposition, e.g. 12 -> 2 2 3
    public static void printFactors(int num) {
        while (num % 2 == 0) {
            System.out.print(2 + " ");
            num /= 2;
        }
        for (int i = 3; i <= Math.sqrt(num); i += 2) {
            while (num % i == 0) {
                System.out.print(i + " ");
                num /= i;
            }
        }
        if (num > 2) {
            System.out.print(num);
        }
        System.out.println();
    }

    int[] p(int x) {
        int[] out = new int[32];
        int k = 0;
        for (int d = 2; d <= x; d++) {
            while (x % d == 0) {
                out[k++] = d;
                x /= d;
            }
        }
        return Arrays.copyOf(out, k);
    }

    public static Set<Integer> distinctPrimeFactors(int n) {
        Set<Integer> primes = new HashSet<>();
        int divisor = 2;
        while (divisor * divisor <= n) {
            if (n % divisor == 0) {
                primes.add(divisor);
                n = n / divisor;
            } else {
                divisor++;
            }
        }
        if (n > 1) {
            primes.add(n);
        }
        return primes;
    }

    public static List<BigInteger> factorsOf(BigInteger n) {
        List<BigInteger> out = new ArrayList<>();
        BigInteger two = BigInteger.valueOf(2);
        BigInteger d = two;
        while (d.multiply(d).compareTo(n) <= 0) {
            if (n.mod(d).equals(BigInteger.ZERO)) {
                out.add(d);
                n = n.divide(d);
            } else {
                d = d.add(BigInteger.ONE);
            }
        }
        if (n.compareTo(BigInteger.ONE) > 0) {
            out.add(n);
        }
        return out;
    }

    public static String primeFactorization(int n) {
        StringBuilder sb = new StringBuilder();
        for (int f = 2; n > 1; f++) {
            while (n % f == 0) {
                if (sb.length() > 0) {
                    sb.append('*');
                }
                sb.append(f);
                n /= f;
            }
        }
        return sb.toString();
    }

    public int countPrimeFactors(int n) {
        int count = 0;
        int i = 2;
        while (i <= n) {
            if (n % i == 0) {
                count++;
                n = n / i;
            } else {
                i++;
            }
        }
        return count;
    }

    static List<Integer> decompose(int value) {
        List<Integer> parts = new ArrayList<>();
        int rest = value;
        int candidate = 2;
        do {
            if (rest % candidate == 0) {
                parts.add(candidate);
                rest /= candidate;
            } else {
                candidate += candidate == 2 ? 1 : 2;
            }
        } while (rest > 1);
        return parts;
    }
}
